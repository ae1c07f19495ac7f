"""Order lifecycle."""

import datetime
import uuid

import db
from analytics.tracker import track_order
from inventory.logic import check_stock
from notifications.mailer import send_confirmation


def create(payload):
    sku = payload["sku"]
    quantity = int(payload.get("quantity", 1))
    available = check_stock(sku, quantity)
    if not available:
        return {"error": "out of stock", "sku": sku}
    order = {
        "order_id": str(uuid.uuid4()),
        "sku": sku,
        "quantity": quantity,
        "status": "created",
        "created_at": datetime.datetime.utcnow().isoformat(),
    }
    table = db.get_table("orders")
    table.put_item(Item=order)
    announce(order)
    return order


def announce(order):
    send_confirmation(order)
    track_order(order)


def list_orders():
    table = db.get_table("orders")
    return table.scan().get("Items", [])


def get_order(order_id):
    table = db.get_table("orders")
    result = table.get_item(Key={"order_id": order_id})
    return result.get("Item")

"""Operational metrics."""

import datetime
import uuid

import db


def track_order(order):
    table = db.get_table("analytics")
    table.put_item(
        Item={
            "event_id": str(uuid.uuid4()),
            "kind": "order_created",
            "sku": order["sku"],
            "at": datetime.datetime.utcnow().isoformat(),
        }
    )


def log_restock(event):
    table = db.get_table("analytics")
    table.put_item(
        Item={
            "event_id": str(uuid.uuid4()),
            "kind": "restock",
            "sku": event["sku"],
            "quantity": event["quantity"],
            "at": datetime.datetime.utcnow().isoformat(),
        }
    )

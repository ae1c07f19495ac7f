"""Stock levels."""

import db


def stock_level(sku):
    table = db.get_table("inventory")
    result = table.get_item(Key={"sku": sku})
    return int(result.get("Item", {}).get("quantity", 0))


def check_stock(sku, quantity):
    return stock_level(sku) >= quantity


def restock_item(sku, quantity):
    table = db.get_table("inventory")
    current = stock_level(sku)
    item = {"sku": sku, "quantity": current + quantity}
    table.put_item(Item=item)
    return item

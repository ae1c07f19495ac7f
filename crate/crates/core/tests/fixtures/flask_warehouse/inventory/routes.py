from flask import Blueprint, jsonify, request

from analytics.tracker import log_restock
from auth.tokens import warehouse_required
from inventory import logic

bp = Blueprint("inventory", __name__, url_prefix="/inventory")


@bp.route("/<sku>", methods=["GET"])
def get_stock(sku):
    level = logic.stock_level(sku)
    return jsonify({"sku": sku, "available": level})


@bp.route("/restock", methods=["POST"])
@warehouse_required
def restock():
    payload = request.get_json()
    updated = logic.restock_item(payload["sku"], int(payload["quantity"]))
    log_restock({"sku": payload["sku"], "quantity": payload["quantity"]})
    return jsonify(updated)

from flask import Blueprint, jsonify, request

from auth.tokens import login_required
from orders import logic

bp = Blueprint("orders", __name__, url_prefix="/orders")


@bp.route("/", methods=["POST"])
@login_required
def create_order():
    payload = request.get_json()
    order = logic.create(payload)
    if "error" in order:
        return jsonify(order), 409
    return jsonify(order), 201


@bp.route("/", methods=["GET"])
@login_required
def list_orders():
    orders = logic.list_orders()
    return jsonify(orders)


@bp.route("/<order_id>", methods=["GET"])
@login_required
def get_order(order_id):
    order = logic.get_order(order_id)
    if order is None:
        return jsonify({"error": "not found"}), 404
    return jsonify(order)

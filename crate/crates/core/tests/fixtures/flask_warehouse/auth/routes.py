from flask import Blueprint, jsonify, request

from auth.tokens import create_token, verify_credentials

bp = Blueprint("auth", __name__)


@bp.route("/register", methods=["POST"])
def register():
    payload = request.get_json()
    token = create_token(payload["username"], payload.get("role", "customer"))
    return jsonify({"token": token}), 201


@bp.route("/login", methods=["POST"])
def login():
    payload = request.get_json()
    if not verify_credentials(payload["username"], payload["password"]):
        return jsonify({"error": "invalid credentials"}), 401
    token = create_token(payload["username"], payload.get("role", "customer"))
    return jsonify({"token": token})


@bp.route("/logout", methods=["POST"])
def logout():
    return jsonify({"ok": True})

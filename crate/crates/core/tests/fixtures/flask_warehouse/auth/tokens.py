"""JWT issuance and the auth decorators used by the route blueprints."""

import functools
import os

import jwt
from flask import jsonify, request

SECRET = os.environ.get("APP_SECRET", "dev-secret")

_USERS = {"demo": ("demo-password", "customer"), "ops": ("ops-password", "warehouse")}


def create_token(username, role):
    return jwt.encode({"sub": username, "role": role}, SECRET, algorithm="HS256")


def verify_credentials(username, password):
    record = _USERS.get(username)
    return record is not None and record[0] == password


def _decode(header):
    if not header.startswith("Bearer "):
        return None
    try:
        return jwt.decode(header[7:], SECRET, algorithms=["HS256"])
    except jwt.InvalidTokenError:
        return None


def login_required(view):
    @functools.wraps(view)
    def wrapper(*args, **kwargs):
        claims = _decode(request.headers.get("Authorization", ""))
        if claims is None:
            return jsonify({"error": "unauthorized"}), 401
        return view(*args, **kwargs)

    return wrapper


def warehouse_required(view):
    @functools.wraps(view)
    def wrapper(*args, **kwargs):
        claims = _decode(request.headers.get("Authorization", ""))
        if claims is None or claims.get("role") != "warehouse":
            return jsonify({"error": "warehouse role required"}), 403
        return view(*args, **kwargs)

    return wrapper

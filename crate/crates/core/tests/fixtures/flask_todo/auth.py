"""JWT session helpers."""

import functools
import os

import jwt
from flask import jsonify, request

SECRET = os.environ.get("APP_SECRET", "dev-secret")

_USERS = {"demo": "demo-password"}


def create_token(username):
    return jwt.encode({"sub": username}, SECRET, algorithm="HS256")


def verify_credentials(username, password):
    return _USERS.get(username) == password


def login_required(view):
    @functools.wraps(view)
    def wrapper(*args, **kwargs):
        header = request.headers.get("Authorization", "")
        if not header.startswith("Bearer "):
            return jsonify({"error": "missing token"}), 401
        try:
            jwt.decode(header[7:], SECRET, algorithms=["HS256"])
        except jwt.InvalidTokenError:
            return jsonify({"error": "invalid token"}), 401
        return view(*args, **kwargs)

    return wrapper

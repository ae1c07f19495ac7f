"""Todo list backend."""

from flask import Flask, jsonify, request

import db
from auth import create_token, login_required, verify_credentials
from helpers import audit_event, build_summary, enrich_todo, notify_change

app = Flask(__name__)


@app.route("/todos", methods=["GET", "POST"])
@login_required
async def todos_collection():
    table = db.get_table("todos")
    if request.method == "POST":
        payload = request.get_json()
        summary = build_summary(payload)
        enriched = await enrich_todo(payload)
        await audit_event("todo.created", enriched)
        notify_change(enriched)
        enriched["summary"] = summary
        table.put_item(Item=enriched)
        return jsonify(enriched), 201
    items = table.scan().get("Items", [])
    return jsonify(items)


@app.route("/todos/<todo_id>", methods=["DELETE"])
@login_required
def delete_todo(todo_id):
    table = db.get_table("todos")
    table.delete_item(Key={"todo_id": todo_id})
    return "", 204


@app.route("/register", methods=["POST"])
def register():
    payload = request.get_json()
    token = create_token(payload["username"])
    return jsonify({"token": token}), 201


@app.route("/login", methods=["POST"])
def login():
    payload = request.get_json()
    if not verify_credentials(payload["username"], payload["password"]):
        return jsonify({"error": "invalid credentials"}), 401
    token = create_token(payload["username"])
    return jsonify({"token": token})


@app.route("/logout", methods=["POST"])
def logout():
    return jsonify({"ok": True})


if __name__ == "__main__":
    app.run(debug=True)

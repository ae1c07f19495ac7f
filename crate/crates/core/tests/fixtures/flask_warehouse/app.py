"""Warehouse backend: orders, inventory and operational reporting."""

from flask import Flask

from auth.routes import bp as auth_bp
from inventory.routes import bp as inventory_bp
from orders.routes import bp as orders_bp


def create_app():
    app = Flask(__name__)
    app.register_blueprint(auth_bp)
    app.register_blueprint(orders_bp)
    app.register_blueprint(inventory_bp)
    return app


if __name__ == "__main__":
    create_app().run(debug=True)

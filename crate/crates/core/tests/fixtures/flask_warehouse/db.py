"""Shared DynamoDB access."""

import os

import boto3

_resource = None


def get_resource():
    global _resource
    if _resource is None:
        _resource = boto3.resource(
            "dynamodb", region_name=os.environ.get("AWS_REGION", "us-east-1")
        )
    return _resource


def get_table(name):
    return get_resource().Table(name)

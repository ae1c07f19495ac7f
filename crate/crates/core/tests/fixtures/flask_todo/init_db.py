"""One-off table bootstrap."""

import boto3


def main():
    dynamodb = boto3.resource("dynamodb")
    dynamodb.create_table(
        TableName="todos",
        KeySchema=[{"AttributeName": "todo_id", "KeyType": "HASH"}],
        AttributeDefinitions=[{"AttributeName": "todo_id", "AttributeType": "S"}],
        BillingMode="PAY_PER_REQUEST",
    )


if __name__ == "__main__":
    main()

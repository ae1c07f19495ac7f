const { DynamoDBClient } = require('@aws-sdk/client-dynamodb');
const {
  DynamoDBDocumentClient,
  PutCommand,
  GetCommand,
  ScanCommand,
} = require('@aws-sdk/lib-dynamodb');

const client = DynamoDBDocumentClient.from(new DynamoDBClient({}));

async function putItem(table, item) {
  await client.send(new PutCommand({ TableName: table, Item: item }));
  return item;
}

async function getItem(table, id) {
  const out = await client.send(new GetCommand({ TableName: table, Key: { id } }));
  return out.Item;
}

async function scanItems(table) {
  const out = await client.send(new ScanCommand({ TableName: table }));
  return out.Items || [];
}

module.exports = { putItem, getItem, scanItems };

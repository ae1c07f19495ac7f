const db = require('../db');

async function queueFulfillment(order) {
  await db.putItem('orders', { ...order, status: 'queued' });
  console.log(`fulfillment queued for order ${order.id}`);
}

module.exports = { queueFulfillment };

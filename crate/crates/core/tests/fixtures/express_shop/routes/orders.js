const express = require('express');

const db = require('../db');
const fulfillment = require('../services/fulfillment');
const { authenticate } = require('../auth');

const router = express.Router();

router.get('/orders', authenticate, listOrders);
router.get('/orders/:id', authenticate, getOrder);
router.post('/orders', authenticate, createOrder);

async function listOrders(req, res) {
  const orders = await db.scanItems('orders');
  res.json(orders);
}

async function getOrder(req, res) {
  const order = await db.getItem('orders', req.params.id);
  if (!order) {
    return res.status(404).json({ error: 'not found' });
  }
  res.json(order);
}

async function createOrder(req, res) {
  const order = {
    id: String(Date.now()),
    items: req.body.items || [],
    status: 'pending',
  };
  await db.putItem('orders', order);
  fulfillment.queueFulfillment(order);
  res.status(201).json(order);
}

module.exports = router;

const db = require('../db');

async function searchProducts(query) {
  const items = await db.scanItems('products');
  if (!query) {
    return items;
  }
  return items.filter((p) => (p.name || '').includes(query));
}

async function findProduct(id) {
  return db.getItem('products', id);
}

async function addProduct(fields) {
  const product = { id: String(Date.now()), ...fields };
  await db.putItem('products', product);
  return product;
}

module.exports = { searchProducts, findProduct, addProduct };

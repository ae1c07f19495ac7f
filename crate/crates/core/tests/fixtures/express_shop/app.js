const express = require('express');

const { register, login, logout } = require('./auth');
const productsRouter = require('./routes/products');
const ordersRouter = require('./routes/orders');

const app = express();
app.use(express.json());

app.post('/register', register);
app.post('/login', login);
app.post('/logout', logout);

app.use('/api', productsRouter);
app.use('/api', ordersRouter);

const port = process.env.PORT || 3000;
app.listen(port, () => {
  console.log(`shop listening on ${port}`);
});

const jwt = require('jsonwebtoken');

const SECRET = process.env.APP_SECRET || 'dev-secret';
const users = new Map();

function register(req, res) {
  const { username, password } = req.body;
  if (users.has(username)) {
    return res.status(409).json({ error: 'user exists' });
  }
  users.set(username, password);
  const token = jwt.sign({ sub: username }, SECRET);
  res.status(201).json({ token });
}

function login(req, res) {
  const { username, password } = req.body;
  if (users.get(username) !== password) {
    return res.status(401).json({ error: 'invalid credentials' });
  }
  const token = jwt.sign({ sub: username }, SECRET);
  res.json({ token });
}

function logout(req, res) {
  res.json({ ok: true });
}

function authenticate(req, res, next) {
  const header = req.headers.authorization || '';
  if (!header.startsWith('Bearer ')) {
    return res.status(401).json({ error: 'missing token' });
  }
  try {
    req.user = jwt.verify(header.slice(7), SECRET);
  } catch (err) {
    return res.status(401).json({ error: 'invalid token' });
  }
  next();
}

module.exports = { register, login, logout, authenticate };

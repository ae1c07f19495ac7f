"""Todo enrichment and change notification."""

import asyncio
import datetime
import uuid


def build_summary(payload):
    title = payload.get("title", "")
    return title[:40]


async def enrich_todo(payload):
    await asyncio.sleep(0)
    enriched = dict(payload)
    enriched.setdefault("todo_id", str(uuid.uuid4()))
    enriched.setdefault("created_at", datetime.datetime.utcnow().isoformat())
    enriched.setdefault("done", False)
    return enriched


async def audit_event(kind, payload):
    await asyncio.sleep(0)
    print(f"audit {kind}: {payload.get('todo_id')}")


def notify_change(todo):
    print(f"todo changed: {todo.get('todo_id')}")

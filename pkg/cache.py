"""In-memory memo cache for expensive algebraic constructions."""

from collections import OrderedDict
from typing import Any, Callable, Optional
import hashlib

from config import settings


class ExpansionCache:
    """
    LRU cache for immutable construction results.

    Relation sets and permutation sums are rebuilt many times by the
    theorem registry; all stored values are immutable, so entries can be
    shared freely between callers.
    """

    def __init__(self, max_entries: int = 256):
        self._cache: OrderedDict[str, Any] = OrderedDict()
        self._max_entries = max_entries
        self._hits = 0
        self._misses = 0

    def _make_key(self, *args) -> str:
        """md5 of the joined argument reprs."""
        key_string = ":".join(repr(arg) for arg in args)
        return hashlib.md5(key_string.encode()).hexdigest()

    def get(self, key: str) -> Optional[Any]:
        """Return the cached value or None, refreshing its recency."""
        if key not in self._cache:
            self._misses += 1
            return None
        self._hits += 1
        self._cache.move_to_end(key)
        return self._cache[key]

    def set(self, key: str, value: Any) -> None:
        """Store a value, evicting the least recently used entry when full."""
        if self._max_entries <= 0:
            return
        self._cache[key] = value
        self._cache.move_to_end(key)
        while len(self._cache) > self._max_entries:
            self._cache.popitem(last=False)

    def get_or_build(self, builder: Callable[[], Any], *args) -> Any:
        """Memoize ``builder()`` under the key made from ``args``."""
        key = self._make_key(*args)
        value = self.get(key)
        if value is None:
            value = builder()
            self.set(key, value)
        return value

    def clear(self) -> int:
        """Drop every entry and reset the counters; returns the number dropped."""
        count = len(self._cache)
        self._cache.clear()
        self._hits = self._misses = 0
        return count

    def stats(self) -> dict:
        """Entry count, capacity, hits and misses."""
        return {
            "total_entries": len(self._cache),
            "max_entries": self._max_entries,
            "hits": self._hits,
            "misses": self._misses,
        }


# Global cache instance
cache = ExpansionCache(max_entries=settings.cache_entries)

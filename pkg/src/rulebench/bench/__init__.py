"""Benchmark harness: generators, timed runners, caching, CSV/plot output."""

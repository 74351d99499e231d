"""Sampled checks of the path lemmas behind closure and independence."""

from __future__ import annotations

import itertools

from hypothesis import given

from pseudospace.oracle import Naive, random_fragment
from pseudospace.zigzag import iter_zigzags

from conftest import fragments


def _all_zigzags(g, max_len=6):
    return [p for x in g.vertices for p in iter_zigzags(g, x, max_len=max_len)]


def _contents(nv, p):
    out = set(p)
    for u, v in zip(p, p[1:]):
        out |= nv.interval(u, v)
    return out


def _splice_instances(g):
    nv = Naive(g)
    zs = _all_zigzags(g, 4)
    ends_at_peak = [p for p in zs if len(p) >= 2 and nv.lt(p[-2], p[-1])]
    starts_at_sink = [q for q in zs if len(q) >= 2 and nv.lt(q[0], q[1])]
    for p, q in itertools.islice(itertools.product(ends_at_peak, starts_at_sink), 4000):
        a_n, b_n, a0, b0 = p[-2], p[-1], q[0], q[1]
        if nv.inf(b_n, b0) == a0 and not nv.comp(a_n, a0):
            yield p + q, nv.is_weak_zigzag(p + q)


@given(fragments(max_steps=12))
def test_splice(g):
    for seq, ok in _splice_instances(g):
        assert ok, seq


def test_splice_sweep_is_informative():
    seen = 0
    for seed in range(20):
        for seq, ok in _splice_instances(random_fragment(2, 12, seed)):
            assert ok, seq
            seen += 1
    assert seen > 0


@given(fragments(max_steps=12))
def test_connect(g):
    nv = Naive(g)
    zs = _all_zigzags(g)
    by_ends = {}
    for p in zs:
        by_ends.setdefault((p[0], p[-1]), []).append(p)
    sink_to_sink = [p for p in zs if len(p) >= 3 and len(p) % 2 == 1 and nv.lt(p[0], p[1])]
    for p in sink_to_sink[:60]:
        for r in g.vertices:
            if not nv.le(p[0], r):
                continue
            for s in g.vertices:
                if not nv.le(p[-1], s):
                    continue
                for x in p:
                    if not nv.le(x, r) and not nv.le(x, s):
                        assert any(x in q for q in by_ends.get((r, s), []))


@given(fragments(max_steps=12))
def test_concatenation(g):
    zs = _all_zigzags(g)
    from_to = {}
    for p in zs:
        from_to.setdefault((p[0], p[-1]), []).append(p)
    for p in zs[:80]:
        for x in p:
            for q in (q for q in zs if len(q) >= 2 and q[0] == x):
                tail = q[1:]
                c = q[-1]
                ok = any(r[-len(tail):] == tail for end in (p[0], p[-1])
                         for r in from_to.get((end, c), []))
                assert ok, (p, q)


@given(fragments(max_steps=12))
def test_contents_extension(g):
    nv = Naive(g)
    zs = _all_zigzags(g)
    from_to = {}
    for p in zs:
        from_to.setdefault((p[0], p[-1]), []).append(p)
    for p in zs[:120]:
        a, x = p[0], p[-1]
        for c in g.above_sorted[x]:
            U = {b for b in g.vertices if nv.le(b, c) and not nv.lt(b, x)}
            cp = _contents(nv, p)
            assert any(_contents(nv, q) - cp <= U for q in from_to.get((a, c), []))

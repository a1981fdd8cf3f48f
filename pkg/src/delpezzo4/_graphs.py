"""Automorphisms of small simple graphs by refinement and backtracking."""

from __future__ import annotations

from typing import Sequence


def _refine(adj: Sequence[frozenset[int]], colours: list[int]) -> list[int]:
    # colour refinement: split classes by the multiset of neighbour colours
    n = len(adj)
    while True:
        signatures = [(colours[v], tuple(sorted(colours[u] for u in adj[v]))) for v in range(n)]
        table = {sig: i for i, sig in enumerate(sorted(set(signatures)))}
        new = [table[sig] for sig in signatures]
        if len(set(new)) == len(set(colours)):
            return new
        colours = new


def automorphisms(adj: Sequence[frozenset[int]]) -> list[tuple[int, ...]]:
    """All automorphisms of the graph, each as a tuple ``p`` with p[v] the image of v."""
    n = len(adj)
    colours = _refine(adj, [len(a) for a in adj])
    order = sorted(range(n), key=lambda v: (-len(adj[v]), v))
    found: list[tuple[int, ...]] = []
    image = [-1] * n
    used = [False] * n

    def extend(depth: int) -> None:
        if depth == n:
            found.append(tuple(image))
            return
        v = order[depth]
        for w in range(n):
            if used[w] or colours[w] != colours[v]:
                continue
            # adjacency to every already placed vertex must be preserved
            if any((u in adj[v]) != (image[u] in adj[w]) for u in order[:depth]):
                continue
            image[v], used[w] = w, True
            extend(depth + 1)
            image[v], used[w] = -1, False

    extend(0)
    return found

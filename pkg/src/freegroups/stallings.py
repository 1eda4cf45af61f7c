"""Folded core graphs for finitely generated subgroups of free groups.

A subgroup graph is a connected, folded, directed graph with edges
labeled by generators and a distinguished base vertex.  Folded means no
vertex carries two outgoing (or two incoming) edges with the same label,
so paths reading a given word are unique in both directions.  Core means
every vertex except possibly the base has total degree >= 2; the base is
kept even at degree <= 1 because membership is base-point sensitive.

Graphs are canonically renumbered (breadth-first from the base, edges
ordered by generator index and sign) on construction, so two graphs are
label-isomorphic exactly when their edge sets are equal.  Instances are
immutable after construction and all operations here are pure.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .words import Alphabet, Word, free_reduce

Edge = tuple[int, int, int]  # (src, generator letter > 0, dst)


class SubgroupGraph:
    __slots__ = ("alphabet", "edges", "generating_words", "_out", "_in", "_vertices")

    def __init__(self, alphabet: Alphabet, edges: Iterable[Edge], generating_words: Sequence[Word] = ()):
        self.alphabet = alphabet
        self.edges = frozenset(edges)
        self.generating_words = tuple(generating_words)
        out: dict[tuple[int, int], int] = {}
        inc: dict[tuple[int, int], int] = {}
        verts = {0}
        for src, g, dst in self.edges:
            if (src, g) in out or (dst, g) in inc:
                raise ValueError("graph is not folded")
            out[(src, g)] = dst
            inc[(dst, g)] = src
            verts.add(src)
            verts.add(dst)
        self._out = out
        self._in = inc
        self._vertices = frozenset(verts)

    # The base vertex is always 0 after canonical renumbering.
    base = 0

    @property
    def vertices(self) -> frozenset[int]:
        return self._vertices

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SubgroupGraph)
            and self.alphabet == other.alphabet
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.alphabet, self.edges))

    def __repr__(self) -> str:
        return f"SubgroupGraph(vertices={len(self._vertices)}, edges={len(self.edges)}, rank={self.rank()})"

    def step(self, vertex: int, letter: int) -> Optional[int]:
        """Follow one letter from a vertex; None if no such edge."""
        if letter > 0:
            return self._out.get((vertex, letter))
        return self._in.get((vertex, -letter))

    def contains(self, w: Word) -> bool:
        """True iff w labels a closed path at the base vertex."""
        if w.alphabet != self.alphabet:
            raise ValueError("alphabet mismatch")
        cur: Optional[int] = 0
        for letter in w.letters:
            cur = self.step(cur, letter)
            if cur is None:
                return False
        return cur == 0

    def rank(self) -> int:
        return len(self.edges) - len(self._vertices) + 1

    def is_rose(self) -> bool:
        return len(self._vertices) == 1 and len(self.edges) == self.alphabet.rank

    def _spanning_tree(self) -> tuple[dict[int, tuple[int, ...]], list[Edge]]:
        """BFS tree paths from the base plus the non-tree edges (sorted).

        Paths are letter tuples; exploration order is (generator index,
        out before in), matching the canonical renumbering.
        """
        path: dict[int, tuple[int, ...]] = {0: ()}
        tree_edges: set[Edge] = set()
        queue = [0]
        while queue:
            v = queue.pop(0)
            for g in range(1, self.alphabet.rank + 1):
                w = self._out.get((v, g))
                if w is not None and w not in path:
                    path[w] = path[v] + (g,)
                    tree_edges.add((v, g, w))
                    queue.append(w)
                u = self._in.get((v, g))
                if u is not None and u not in path:
                    path[u] = path[v] + (-g,)
                    tree_edges.add((u, g, v))
                    queue.append(u)
        non_tree = sorted(e for e in self.edges if e not in tree_edges)
        return path, non_tree

    def basis(self) -> list[Word]:
        """A free basis from the spanning-tree complement."""
        path, non_tree = self._spanning_tree()
        basis = []
        for src, g, dst in non_tree:
            lets = path[src] + (g,) + tuple(-l for l in reversed(path[dst]))
            basis.append(Word(self.alphabet, free_reduce(lets), _reduced=True))
        return basis

    def express_in_basis(self, w: Word) -> Optional[tuple[int, ...]]:
        """Rewrite a member word over the spanning-tree basis.

        Returns signed basis indices (1-based, aligned with ``basis()``),
        or None when w is not in the subgroup.
        """
        path, non_tree = self._spanning_tree()
        index = {e: k + 1 for k, e in enumerate(non_tree)}
        cur = 0
        out: list[int] = []
        for letter in w.letters:
            nxt = self.step(cur, letter)
            if nxt is None:
                return None
            edge = (cur, letter, nxt) if letter > 0 else (nxt, -letter, cur)
            k = index.get(edge)
            if k is not None:
                out.append(k if letter > 0 else -k)
            cur = nxt
        if cur != 0:
            return None
        return free_reduce(out)

    def to_text(self) -> str:
        lines = ["gens " + " ".join(self.alphabet.generators), "base 0"]
        for src, g, dst in sorted(self.edges):
            lines.append(f"{src} {self.alphabet.generators[g - 1]} {dst}")
        return "\n".join(lines) + "\n"


def graph_from_text(text: str) -> SubgroupGraph:
    alphabet = None
    edges = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "gens":
            alphabet = Alphabet(parts[1:])
        elif parts[0] == "base":
            if parts[1:] != ["0"]:
                raise ValueError("graph files use base vertex 0")
        else:
            if alphabet is None:
                raise ValueError("graph file must declare gens before edges")
            if len(parts) != 3:
                raise ValueError(f"bad edge line {line!r}")
            src, label, dst = parts
            edges.append((int(src), alphabet.index(label) + 1, int(dst)))
    if alphabet is None:
        raise ValueError("graph file missing gens line")
    declared = {0} | {v for e in edges for v in (e[0], e[2])}
    adjacency: dict[int, set[int]] = {}
    for a, _, b in edges:
        adjacency.setdefault(a, set()).add(b)
        adjacency.setdefault(b, set()).add(a)
    seen = {0}
    queue = [0]
    while queue:
        v = queue.pop()
        for nbr in adjacency.get(v, ()):
            if nbr not in seen:
                seen.add(nbr)
                queue.append(nbr)
    if seen != declared:
        raise ValueError("graph file must be connected to base vertex 0")
    return _canonical(alphabet, set(edges), 0, ())


def _fold(edges: set[Edge], base: int) -> tuple[set[Edge], int]:
    """Identify targets (sources) of same-labeled edges until folded.

    Folding is confluent, but merges are picked in sorted order anyway so
    intermediate states are deterministic.
    """
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        root = x
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(x, x) != x:
            parent[x], x = root, parent[x]
        return root

    while True:
        current = {(find(a), g, find(b)) for a, g, b in edges}
        merge = None
        out: dict[tuple[int, int], int] = {}
        inc: dict[tuple[int, int], int] = {}
        for a, g, b in sorted(current):
            if (a, g) in out and out[(a, g)] != b:
                merge = (out[(a, g)], b)
                break
            out[(a, g)] = b
            if (b, g) in inc and inc[(b, g)] != a:
                merge = (inc[(b, g)], a)
                break
            inc[(b, g)] = a
        if merge is None:
            return current, find(base)
        x, y = find(merge[0]), find(merge[1])
        if x != y:
            parent[max(x, y)] = min(x, y)


def _trim(edges: set[Edge], base: int) -> set[Edge]:
    """Remove non-base vertices of total degree <= 1 until core."""
    edges = set(edges)
    while True:
        degree: dict[int, int] = {}
        for a, _, b in edges:
            degree[a] = degree.get(a, 0) + 1
            degree[b] = degree.get(b, 0) + 1
        dead = {v for v, d in degree.items() if d <= 1 and v != base}
        if not dead:
            return edges
        edges = {e for e in edges if e[0] not in dead and e[2] not in dead}


def _canonical(alphabet: Alphabet, edges: set[Edge], base, generating_words) -> SubgroupGraph:
    """Renumber vertices by BFS from the base; gives a unique labeled form."""
    rename = {base: 0}
    queue = [base]
    out = {(a, g): b for a, g, b in edges}
    inc = {(b, g): a for a, g, b in edges}
    while queue:
        v = queue.pop(0)
        for g in range(1, alphabet.rank + 1):
            for nbr in (out.get((v, g)), inc.get((v, g))):
                if nbr is not None and nbr not in rename:
                    rename[nbr] = len(rename)
                    queue.append(nbr)
    new_edges = {(rename[a], g, rename[b]) for a, g, b in edges}
    return SubgroupGraph(alphabet, new_edges, generating_words)


def subgroup_graph(alphabet: Alphabet, words: Sequence[Word]) -> SubgroupGraph:
    """Folded core graph of the subgroup generated by the given words.

    The empty list yields the single-vertex graph (trivial subgroup).
    Folding is confluent: any generator order gives a label-isomorphic
    result.
    """
    words = tuple(words)
    for w in words:
        if w.alphabet != alphabet:
            raise ValueError("alphabet mismatch")
    edges: set[Edge] = set()
    fresh = 1
    for w in words:
        cur = 0
        n = len(w.letters)
        for i, letter in enumerate(w.letters):
            nxt = 0 if i == n - 1 else fresh
            if i != n - 1:
                fresh += 1
            if letter > 0:
                edges.add((cur, letter, nxt))
            else:
                edges.add((nxt, -letter, cur))
            cur = nxt
    folded, base = _fold(edges, 0)
    cored = _trim(folded, base)
    return _canonical(alphabet, cored, base, words)


def _product_edges(g1: SubgroupGraph, g2: SubgroupGraph):
    """Labeled fiber product over the rose: all pair vertices and edges."""
    edges = []
    for (p, g), p2 in g1._out.items():
        for (q, h), q2 in g2._out.items():
            if g == h:
                edges.append(((p, q), g, (p2, q2)))
    return edges


def intersect(g1: SubgroupGraph, g2: SubgroupGraph) -> SubgroupGraph:
    """Core of the base component of the fiber product: H1 meet H2."""
    if g1.alphabet != g2.alphabet:
        raise ValueError("alphabet mismatch")
    edges = _product_edges(g1, g2)
    # Restrict to the component of the paired base vertices.
    adjacency: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for a, _, b in edges:
        adjacency.setdefault(a, []).append(b)
        adjacency.setdefault(b, []).append(a)
    seen = {(0, 0)}
    queue = [(0, 0)]
    while queue:
        v = queue.pop(0)
        for w in adjacency.get(v, ()):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    rename = {v: i for i, v in enumerate(sorted(seen, key=lambda v: (v != (0, 0), v)))}
    kept = {(rename[a], g, rename[b]) for a, g, b in edges if a in seen and b in seen}
    cored = _trim(kept, 0)
    return _canonical(g1.alphabet, cored, 0, ())


def is_malnormal(graph: SubgroupGraph) -> bool:
    """True iff every non-diagonal fiber-product component has trivial core.

    In a folded graph paths are deterministic in both directions, so the
    diagonal pairs (p, p) form one component isomorphic to the graph; any
    other component with a cycle witnesses a nontrivial intersection with
    a conjugate.  For a cyclic subgroup this is equivalent to the
    generator being root-free.
    """
    edges = _product_edges(graph, graph)
    adjacency: dict[tuple[int, int], list[tuple[int, int]]] = {}
    verts = set()
    for a, _, b in edges:
        adjacency.setdefault(a, []).append(b)
        adjacency.setdefault(b, []).append(a)
        verts.add(a)
        verts.add(b)
    seen: set[tuple[int, int]] = set()
    for start in sorted(verts):
        if start in seen:
            continue
        component = {start}
        queue = [start]
        while queue:
            v = queue.pop(0)
            for w in adjacency.get(v, ()):
                if w not in component:
                    component.add(w)
                    queue.append(w)
        seen |= component
        if any(p == q for p, q in component):
            continue
        comp_edges = {e for e in edges if e[0] in component}
        # A component is a forest iff trimming leaves no edges.
        trimmed = _trim_all(comp_edges)
        if trimmed:
            return False
    return True


def _trim_all(edges: set) -> set:
    """Trim degree <= 1 vertices with no protected base vertex."""
    edges = set(edges)
    while True:
        degree: dict = {}
        for a, _, b in edges:
            degree[a] = degree.get(a, 0) + 1
            degree[b] = degree.get(b, 0) + 1
        dead = {v for v, d in degree.items() if d <= 1}
        if not dead:
            return edges
        edges = {e for e in edges if e[0] not in dead and e[2] not in dead}

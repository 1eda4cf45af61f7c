"""Folded subgroup graphs: membership, rank, intersections, malnormality."""

from freegroups import (
    Alphabet,
    intersect,
    is_malnormal,
    parse_word,
    subgroup_graph,
)


def main():
    f2 = Alphabet("x y")
    w = lambda s: parse_word(f2, s)

    print("# Folding a generating set")
    graph = subgroup_graph(f2, [w("x^2"), w("x y x^-1")])
    print(graph.to_text())
    print("rank:", graph.rank())
    print("basis:", ", ".join(str(b) for b in graph.basis()))
    print("contains x y x^-1 x^2 ?", graph.contains(w("x y x^-1 x^2")))
    print("contains y ?", graph.contains(w("y")))

    print()
    print("# Intersections via the fiber product")
    meet = intersect(subgroup_graph(f2, [w("x^2")]), subgroup_graph(f2, [w("x^3")]))
    print("<x^2> meet <x^3> has basis:", ", ".join(str(b) for b in meet.basis()))

    print()
    print("# Malnormality: a cyclic subgroup is malnormal iff root-free")
    print("<x> malnormal ?", is_malnormal(subgroup_graph(f2, [w("x")])))
    print("<x^2> malnormal ?", is_malnormal(subgroup_graph(f2, [w("x^2")])))

    h = Alphabet("a b u y")
    v = parse_word(h, "a y b y a y^-1 b y^-1")
    print("<a y b y a y^-1 b y^-1> malnormal in rank 4 ?", is_malnormal(subgroup_graph(h, [v])))


if __name__ == "__main__":
    main()

"""Word algebra walkthrough: reduction, conjugacy, roots, centralizers."""

from freegroups import (
    Alphabet,
    abelianize,
    centralizer,
    extract_root,
    is_conjugate,
    parse_word,
)


def main():
    f2 = Alphabet("x y")
    w = lambda s: parse_word(f2, s)

    print("# Free reduction")
    print("x y y^-1 x  ->", w("x y y^-1 x"))

    print()
    print("# Conjugacy with witnesses")
    witness = is_conjugate(w("y"), w("x y x^-1"))
    print("y ~ x y x^-1, witness g =", witness)
    print("x ~ y ?", is_conjugate(w("x"), w("y")))

    print()
    print("# Roots and centralizers")
    root, exponent = extract_root(w("x y x y x y"))
    print("(xy)^3 has root", root, "with exponent", exponent)
    print("centralizer generator of x^2:", centralizer(w("x^2")))
    print("centralizer generator of x y x^-1:", centralizer(w("x y x^-1")))

    print()
    print("# Abelianization (exponent sums per generator)")
    print("x^2 y^-1 ->", abelianize(w("x^2 y^-1")))
    print("[x, y]   ->", abelianize(w("x y x^-1 y^-1")))


if __name__ == "__main__":
    main()

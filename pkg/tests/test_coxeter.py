import itertools

import pytest

from heckecells.coxeter import (
    INF,
    CoxeterError,
    CoxeterSystem,
    InfiniteSystemError,
    bruhat_leq,
    build_system,
    coset_decompose,
    deodhar_case,
    enumerate_elements,
    from_word,
    minimal_reps,
    multiply,
    parse_system_text,
    parse_word,
    preset_system,
    word_to_str,
)

from oracles import matrix_of_word


def test_build_system_from_cartan_examples():
    c3 = CoxeterSystem.from_cartan([[2, -2, 0], [-1, 2, -1], [0, -1, 2]])
    assert c3.bond(1, 2) == 4 and c3.bond(2, 3) == 3 and c3.bond(1, 3) == 2
    a1 = CoxeterSystem.from_cartan([[2]])
    assert a1.is_finite() and a1.order() == 2
    g2 = CoxeterSystem.from_cartan([[2, -1], [-3, 2]])
    assert g2.bond(1, 2) == 6 and g2.order() == 12


def test_build_system_rejections():
    with pytest.raises(CoxeterError):
        CoxeterSystem.from_coxeter([[1, 3], [4, 1]])  # not symmetric
    with pytest.raises(CoxeterError):
        CoxeterSystem.from_coxeter([[2, 3], [3, 2]])  # diagonal must be 1
    with pytest.raises(CoxeterError):
        CoxeterSystem.from_coxeter([[1, 5], [5, 1]])  # not crystallographic
    with pytest.raises(CoxeterError):
        CoxeterSystem.from_cartan([[1]])  # diagonal must be 2
    with pytest.raises(CoxeterError):
        CoxeterSystem.from_cartan([[2, 1], [-1, 2]])  # positive off-diagonal
    with pytest.raises(CoxeterError):
        CoxeterSystem.from_cartan([[2, 0], [-1, 2]])  # zero asymmetry


def test_from_word_examples():
    c3 = preset_system("C3")
    assert from_word(c3, "33").is_identity
    assert from_word(c3, "313") == from_word(c3, "1")
    assert from_word(c3, "2123").length == 4
    with pytest.raises(CoxeterError):
        from_word(c3, [9])


def test_multiply_inverse_descents():
    c3 = preset_system("C3")
    a2 = preset_system("A2")
    assert multiply(from_word(c3, "1"), from_word(c3, "2")) == from_word(c3, "12")
    assert multiply(from_word(c3, "212"), from_word(c3, "3")) == from_word(c3, "2123")
    assert from_word(a2, "12").inverse() == from_word(a2, "21")
    assert from_word(a2, "12").descents("right") == (2,)
    assert from_word(a2, "12").descents("left") == (1,)
    with pytest.raises(CoxeterError):
        multiply(from_word(c3, "1"), from_word(a2, "1"))


def test_bruhat_examples():
    c3 = preset_system("C3")
    w0 = c3.longest_element()
    for w in enumerate_elements(c3):
        assert bruhat_leq(c3.identity, w)
        assert bruhat_leq(w, w0)
    assert bruhat_leq(from_word(c3, "13"), from_word(c3, "132"))
    assert not bruhat_leq(from_word(c3, "3"), from_word(c3, "121"))


def test_enumerate_examples():
    a1 = preset_system("A1")
    assert [str(x) for x in enumerate_elements(a1)] == ["e", "1"]
    a2 = preset_system("A2")
    assert [str(x) for x in enumerate_elements(a2)] == ["e", "1", "2", "12", "21", "121"]
    c3 = preset_system("C3")
    els = enumerate_elements(c3)
    assert len(els) == 48 and els[-1].length == 9


def test_minimal_reps_and_decompose():
    c3 = preset_system("C3")
    reps = minimal_reps(c3, (1, 2), "left")
    assert [str(y) for y in reps] == ["e", "3", "32", "321", "3212", "32123"]
    d = coset_decompose(c3, (1, 2), from_word(c3, "2123"), "left")
    assert (str(d.left_factor), str(d.right_factor)) == ("212", "3")
    assert d.left_factor.length + d.right_factor.length == 4
    # empty I: every element is its own representative
    assert minimal_reps(c3, (), "left") == enumerate_elements(c3)
    d0 = coset_decompose(c3, (), from_word(c3, "2123"), "left")
    assert d0.left_factor.is_identity and str(d0.right_factor) == "2123"


def test_minimal_reps_right_quotient():
    c3 = preset_system("C3")
    reps = minimal_reps(c3, (1, 2), "right")
    # the right-quotient representatives are the inverses of the left-quotient ones
    assert {str(y) for y in reps} == {"e", "3", "23", "123", "2123", "32123"}
    lefts = minimal_reps(c3, (1, 2), "left")
    assert {y.inverse() for y in lefts} == set(reps)
    w = from_word(c3, "3212")
    d = coset_decompose(c3, (1, 2), w, "right")
    assert multiply(d.left_factor, d.right_factor) == w
    assert d.left_factor in set(reps)


def test_parabolic_bijection_with_additive_length():
    for name, I in (("A3", (1, 2)), ("C3", (1, 2)), ("C3", (1, 3)), ("C3", (2, 3))):
        system = preset_system(name)
        sub = system.subsystem(I)
        reps = minimal_reps(system, I, "left")
        seen = {}
        for x in sub.elements():
            ax = system.element(x.word)
            for y in reps:
                w = multiply(ax, y)
                assert w.length == ax.length + y.length
                assert w not in seen
                seen[w] = (ax, y)
        assert len(seen) == system.order()


def test_deodhar_examples():
    c3 = preset_system("C3")
    y = from_word(c3, "3")
    case = deodhar_case(c3, (1, 2), y, 2)
    assert case.kind == "longer" and str(case.element) == "32"
    case = deodhar_case(c3, (1, 2), y, 3)
    assert case.kind == "shorter" and case.element.is_identity
    case = deodhar_case(c3, (1, 2), y, 1)
    assert case.kind == "folds" and case.fold == 1
    with pytest.raises(CoxeterError):
        deodhar_case(c3, (1, 2), from_word(c3, "12"), 1)


def test_deodhar_trichotomy_exhaustive_on_c3():
    c3 = preset_system("C3")
    subsets = [
        I
        for size in range(0, 4)
        for I in itertools.combinations((1, 2, 3), size)
    ]
    for I in subsets:
        for y in minimal_reps(c3, I, "left"):
            for s in c3.labels:
                case = deodhar_case(c3, I, y, s)
                ys = multiply(y, c3.generator(s))
                if case.kind == "folds":
                    assert case.fold in I
                    t = c3.generator(case.fold)
                    assert multiply(t, y) == ys
                    assert ys.length == y.length + 1
                else:
                    assert case.element == ys
                    expected = "longer" if ys.length > y.length else "shorter"
                    assert case.kind == expected


def test_bruhat_projection_monotone():
    # the quotient map to minimal representatives preserves Bruhat order
    for name in ("A3", "C3"):
        system = preset_system(name)
        elements = enumerate_elements(system)
        for I in (list(itertools.combinations(system.labels, 1))
                  + list(itertools.combinations(system.labels, 2))):
            proj = {
                w: coset_decompose(system, I, w, "left").right_factor for w in elements
            }
            for u in elements:
                for w in elements:
                    if bruhat_leq(u, w):
                        assert bruhat_leq(proj[u], proj[w]), (I, u, w)


def test_reflection_representation_oracle():
    for name in ("A2", "B2", "A3", "C3"):
        system = preset_system(name)
        mats = {}
        for w in enumerate_elements(system):
            mat = matrix_of_word(system, w.word)
            assert mat not in mats.values()  # normal forms separate matrices
            mats[w] = mat
        # products of all pairs agree with matrix products
        for a in enumerate_elements(system):
            for b in enumerate_elements(system):
                prod = multiply(a, b)
                assert mats[prod] == matrix_of_word(system, a.word + b.word)


def test_infinite_system_behaviour():
    affine = CoxeterSystem.from_cartan([[2, -2], [-2, 2]], max_elements=64)
    assert not affine.is_finite()
    with pytest.raises(InfiniteSystemError):
        enumerate_elements(affine)
    with pytest.raises(InfiniteSystemError):
        minimal_reps(affine, (1,), "left")
    reps = minimal_reps(affine, (1,), "left", max_length=5)
    assert [str(y) for y in reps] == ["e", "2", "21", "212", "2121", "21212"]
    assert affine.finiteness == ("infinite", None)


def test_word_io():
    c3 = preset_system("C3")
    assert word_to_str(()) == "e"
    assert parse_word(c3, "e") == () and parse_word(c3, "id") == ()
    assert parse_word(c3, "2123") == (2, 1, 2, 3)
    big = CoxeterSystem.from_cartan(
        [[2, -1, 0], [-1, 2, -1], [0, -1, 2]], labels=(5, 10, 15)
    )
    w = big.element((5, 10, 15))
    assert str(w) == "5,10,15"
    assert parse_word(big, "5,10,15") == (5, 10, 15)
    with pytest.raises(CoxeterError):
        parse_word(c3, "14x")
    with pytest.raises(CoxeterError):
        parse_word(c3, "9")


def test_system_file_parsing():
    text = """
labels: 1 2
cartan:
2 -2
-1 2
"""
    system = parse_system_text(text)
    assert system == preset_system("B2")
    text_inf = """
labels: 1 2
coxeter:
1 inf
inf 1
"""
    affine = parse_system_text(text_inf)
    assert affine.bond(1, 2) == INF
    with pytest.raises(CoxeterError):
        parse_system_text("labels: 1 2")
    with pytest.raises(CoxeterError):
        parse_system_text("cartan:\n2")
    with pytest.raises(CoxeterError):
        build_system("NOPE")


def test_shortlex_normal_forms_are_minimal():
    # every stored word is the lexicographically least reduced word
    c3 = preset_system("C3")
    for w in enumerate_elements(c3):
        if w.length < 2:
            continue
        # any left descent smaller than the first letter would contradict minimality
        first = w.word[0]
        for s in c3.labels:
            if s < first:
                assert s not in w.descents("left")

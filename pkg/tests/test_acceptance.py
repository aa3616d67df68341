"""Exit criteria, each run at its stated tolerance and time limit.

Run with ``pytest tests/test_acceptance.py``; one PASS/FAIL line per
criterion is printed in the "acceptance criteria" summary section.
"""

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncdeform import (
    Presentation,
    abelianize,
    complete,
    dualize_products,
    free_dim,
    lift_obstructions,
    make_signature,
    normal_form,
    quotient_dims,
    total_dim_if_finite,
)
from ncdeform.models import (
    DegenerationData,
    GrassmannSpec,
    contraction_numerics,
    grassmann_ainfinity,
    grassmann_counts,
    grassmann_dims,
    grassmann_oracle,
    grassmann_presentation,
    matrix_model,
    trivial_extension_re,
)
from ncdeform.rewriting import total_by_degree, unresolved_overlaps

from oracles import avoiding_count
from strategies import polys, signatures, small_fractions

pytestmark = pytest.mark.acceptance

GRASSMANN_PAIRS = [(m, n) for n in range(2, 9) for m in range(1, n)]
TWO_PATH_SPECS = [(1, 3), (2, 4), (3, 5)]


def _weyl():
    sig = make_signature(1, [("a", 1, 1), ("b", 1, 1)])
    return Presentation(sig, [sig.parse("a*b - b*a - e_1")], 2)


def test_criterion_1_grassmann_relation_count(criterion):
    with criterion(1, "Grassmann relation-count identity, 1 <= m < n <= 8", limit=10) as check:
        assert len(GRASSMANN_PAIRS) == 28
        for m, n in GRASSMANN_PAIRS:
            t1, t2, rk = grassmann_counts(GrassmannSpec(m, n))
            assert t2 == math.comb(m + 1, 2) * math.comb(n - m, 2), (m, n)
            assert rk == t2, (m, n)
            assert t1 == m * (n - m)
        check.detail = "28 pairs, relation_rank = t2_dim"


def test_criterion_2_example_presentations(criterion):
    with criterion(2, "Example presentations (1,3), (2,3), (2,4)", limit=5) as check:
        p13 = grassmann_presentation(GrassmannSpec(1, 3))
        assert p13.relations == (p13.signature.parse("a*b - b*a"),)
        assert total_by_degree(quotient_dims(p13, 8)) == [d + 1 for d in range(9)]

        p23 = grassmann_presentation(GrassmannSpec(2, 3))
        assert p23.relations == ()
        assert total_by_degree(quotient_dims(p23, 8)) == [2 ** d for d in range(9)]

        p24 = grassmann_presentation(GrassmannSpec(2, 4))
        sig = p24.signature
        want = [sig.parse(t) for t in ("a*b - b*a", "c*d - d*c", "a*d - d*a - b*c + c*b")]
        assert len(p24.relations) == 3
        for f in p24.relations:
            assert sum(f == g or f == -g for g in want) == 1
        assert {frozenset([f, -f]) for f in p24.relations} == {frozenset([g, -g]) for g in want}
        d2 = total_by_degree(quotient_dims(p24, 2))[2]
        assert d2 == 13
        check.detail = f"(2,4) degree-2 dim {d2}"


def test_criterion_3_weyl_quotient(criterion):
    with criterion(3, "Weyl quotient", limit=5) as check:
        pres = _weyl()
        gb = complete(pres, 8)
        assert gb.added_from_overlaps == 0
        assert len(gb) == 1
        assert unresolved_overlaps(gb) == []
        dims = total_by_degree(quotient_dims(pres, 8, gb))
        filtered = [sum(dims[: N + 1]) for N in range(9)]
        assert filtered == [math.comb(N + 2, 2) for N in range(9)]
        assert total_dim_if_finite(abelianize(pres), 8) == 0
        check.detail = f"filtered dims {filtered}"


def _re_product(r, x, y):
    """Multiplication table of R_e on basis labels ('e', i) and ('a', i, j)."""
    if x[0] == "e" and y[0] == "e":
        return x if x == y else None
    if x[0] == "e":
        return y if x[1] == y[1] else None
    if y[0] == "e":
        return x if x[2] == y[1] else None
    return None


def test_criterion_4_re_tables(criterion):
    with criterion(4, "R_e dimensions and multiplication tables, r = 1, 2, 3", limit=1) as check:
        n_products = 0
        for r in (1, 2, 3):
            pres = trivial_extension_re(r)
            assert total_dim_if_finite(pres, 3) == r + r * r
            sig = pres.signature
            gb = complete(pres, 2)
            labels = [("e", i) for i in range(1, r + 1)]
            labels += [("a", i, j) for i in range(1, r + 1) for j in range(1, r + 1)]

            def elem(lab):
                if lab[0] == "e":
                    return sig.idempotent(lab[1])
                return sig.gen(f"e{lab[1]}{lab[2]}")

            for x in labels:
                for y in labels:
                    want = _re_product(r, x, y)
                    got = normal_form(elem(x) * elem(y), gb)
                    assert got == (sig.zero() if want is None else elem(want)), (x, y)
                    n_products += 1
        check.detail = f"{n_products} products"


def test_criterion_5_two_path_agreement(criterion):
    with criterion(5, "two-path agreement for (1,3), (2,4), (3,5) up to degree 6", limit=60) as check:
        shown = []
        for mn in TWO_PATH_SPECS:
            spec = GrassmannSpec(*mn)
            lifted = lift_obstructions(grassmann_dims(spec), grassmann_oracle(spec), 6)
            one_shot = dualize_products(grassmann_ainfinity(spec))
            da, db = quotient_dims(lifted, 6), quotient_dims(one_shot, 6)
            assert da == db, mn
            shown.append(f"{mn}: {total_by_degree(da)}")
        check.detail = "; ".join(shown)


def _random_degeneration(rng, max_r=4, max_s=6, max_entry=3):
    r = rng.randint(1, max_r)
    s = rng.randint(1, max_s)
    rows = []
    while len(rows) < s:
        row = [rng.randint(0, max_entry) for _ in range(r)]
        if any(row):
            rows.append(row)
    return DegenerationData(r, rows)


def test_criterion_6_contraction_identity(criterion):
    with criterion(6, "contraction identity and matrix models", limit=60) as check:
        rng = random.Random(20261014)
        for _ in range(1000):
            data = _random_degeneration(rng)
            res = contraction_numerics(data)
            m = [sum(row) for row in data.mult]
            n_d = {d: m.count(d) for d in set(m)}
            assert res.n_d == n_d
            assert sum(x * x for x in m) == sum(c * d * d for d, c in n_d.items()) == res.dim_R
        models = 0
        largest = 0
        while models < 50:
            data = _random_degeneration(rng)
            res = contraction_numerics(data)
            if res.dim_R > 100:
                continue
            assert total_dim_if_finite(matrix_model(data), 4) == res.dim_R, data
            models += 1
            largest = max(largest, res.dim_R)
        check.detail = f"1000 identities, 50 matrix models (largest dim_R {largest})"


def _criteria_bases():
    bases = []
    for m, n in GRASSMANN_PAIRS:
        bases.append(complete(grassmann_presentation(GrassmannSpec(m, n)), 4))
    bases.append(complete(grassmann_presentation(GrassmannSpec(1, 3)), 8))
    bases.append(complete(grassmann_presentation(GrassmannSpec(2, 3)), 8))
    bases.append(complete(_weyl(), 8))
    bases.append(complete(abelianize(_weyl()), 6))
    for r in (1, 2, 3):
        bases.append(complete(trivial_extension_re(r), 4))
    for mn in TWO_PATH_SPECS:
        spec = GrassmannSpec(*mn)
        bases.append(complete(lift_obstructions(grassmann_dims(spec), grassmann_oracle(spec), 6), 6))
        bases.append(complete(dualize_products(grassmann_ainfinity(spec)), 6))
    return bases


def test_criterion_7_rewriting_soundness(criterion):
    with criterion(7, "rewriting soundness suite", limit=120) as check:
        bases = _criteria_bases()
        for gb in bases:
            assert unresolved_overlaps(gb) == []
        usable = [gb for gb in bases if gb.signature.arrows]

        @settings(max_examples=300, derandomize=True)
        @given(st.sampled_from(usable), st.data(), small_fractions, small_fractions)
        def nf_laws(gb, data, alpha, beta):
            sig = gb.signature
            half = max(gb.complete_up_to // 2, 1)
            f = data.draw(polys(sig, max_degree=half, max_terms=4))
            g = data.draw(polys(sig, max_degree=half, max_terms=4))
            nf = gb.normal_form
            assert nf(nf(f)) == nf(f)
            assert nf(f * alpha + g * beta) == nf(f) * alpha + nf(g) * beta
            assert nf(f * g) == nf(nf(f) * nf(g))

        nf_laws()

        seen = []

        @settings(max_examples=20, derandomize=True)
        @given(signatures(max_points=3, max_arrows=4))
        def free_counts(sig):
            seen.append(sig)
            dims = quotient_dims(Presentation(sig, [], 1), 5)
            for d in range(6):
                for i in range(1, sig.r + 1):
                    for j in range(1, sig.r + 1):
                        assert dims[d][i - 1][j - 1] == free_dim(sig, d, i, j)

        free_counts()
        assert len(seen) >= 20
        check.detail = f"{len(bases)} bases overlap-checked, {len(seen)} free signatures"


def test_criterion_8_non_noetherian_witness(criterion):
    with criterion(8, "non-Noetherian witness (ab^k a : k <= K), K = 1..5", limit=10) as check:
        sig = make_signature(1, [("a", 1, 1), ("b", 1, 1)])

        def ideal(K):
            return Presentation(sig, [sig.word("a", *["b"] * k, "a") for k in range(1, K + 1)], K + 2)

        shown = []
        for K in range(1, 6):
            d = K + 3
            q_K = total_by_degree(quotient_dims(ideal(K), d))[d]
            q_next = total_by_degree(quotient_dims(ideal(K + 1), d))[d]
            assert q_K == avoiding_count("ab", d, ["a" + "b" * k + "a" for k in range(1, K + 1)])
            in_K, in_next = 2 ** d - q_K, 2 ** d - q_next
            assert in_K < in_next, K
            assert q_K != q_next
            shown.append(f"K={K}: ideal words {in_K} < {in_next}")
        check.detail = "; ".join(shown)


def test_criterion_9_abelianized_hilbert_functions(criterion):
    with criterion(9, "abelianized Grassmann Hilbert functions, m(n-m) <= 6", limit=30) as check:
        cases = [(m, n) for n in range(1, 8) for m in range(0, n + 1) if m * (n - m) <= 6]
        for m, n in cases:
            t = m * (n - m)
            pres = abelianize(grassmann_presentation(GrassmannSpec(m, n)))
            got = total_by_degree(quotient_dims(pres, 4))
            want = [math.comb(d + t - 1, d) if t else int(d == 0) for d in range(5)]
            assert got == want, (m, n)
        check.detail = f"{len(cases)} (m,n) pairs"


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))

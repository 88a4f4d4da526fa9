import unittest
from unittest.mock import patch

from coxforge.core.classify import Kind
from coxforge.core.coxeter import INF, CoxeterMatrix
from coxforge.core.representation import enumerate_ball, word_matrix
from coxforge.core.scalar import is_identity, matmul
from coxforge.core.search import Predicate, SearchSpec, canonical_form, enumerate_diagrams, hunt, is_canonical
from coxforge.core.tits_form import Signature, gram
from coxforge.utils import BudgetExceeded, InputError, InvariantError

HEXAGON_INF = CoxeterMatrix.from_edges(6, {(i, (i + 1) % 6): INF for i in range(6)})


class TestPredicate(unittest.TestCase):

    def test_parse(self):
        predicate = Predicate.parse("p<=2 and kind==NonAffine")
        self.assertEqual(str(predicate), "p<=2 and kind==NonAffine")
        self.assertTrue(predicate.matches(Signature(2, 1, 0), Kind.NON_AFFINE, 3))
        self.assertFalse(predicate.matches(Signature(3, 1, 0), Kind.NON_AFFINE, 4))
        self.assertFalse(predicate.matches(Signature(2, 0, 1), Kind.AFFINE, 3))

    def test_empty_predicate_accepts_everything(self):
        self.assertTrue(Predicate.parse("").matches(Signature(1, 0, 0), Kind.SPHERICAL, 1))
        self.assertTrue(Predicate.parse("  ").matches(Signature(3, 1, 2), Kind.NON_AFFINE, 6))

    def test_parse_errors(self):
        for text in ("p=2", "kind<Affine", "kind==Hyperbolic", "x>1", "p>=two", "p>1 and", "p<=" + "9" * 5000, "q==\u00b2"):
            with self.assertRaises(InputError, msg=text):
                Predicate.parse(text)


class TestSearchSpec(unittest.TestCase):

    def test_bounds(self):
        with self.assertRaises(InputError):
            SearchSpec(vertices=(3, 10))
        with self.assertRaises(InputError):
            SearchSpec(vertices=(0, 2))
        with self.assertRaises(InputError):
            SearchSpec(vertices=(3, 3), alphabet=(2,))
        with self.assertRaises(InputError):
            SearchSpec(vertices=(3, 3), alphabet=(1, 3))
        with self.assertRaises(InputError):
            SearchSpec(vertices=(3, 3), workers=0)

    def test_alphabet_always_has_non_edges(self):
        self.assertEqual(SearchSpec(vertices=(3, 3), alphabet=(INF, 3)).alphabet, (2, 3, INF))


class TestEnumeration(unittest.TestCase):

    def count(self, n, alphabet, workers=1):
        return len(list(enumerate_diagrams(SearchSpec(vertices=(n, n), alphabet=alphabet, workers=workers))))

    def test_small_counts(self):
        self.assertEqual(self.count(1, (3,)), 1)
        self.assertEqual(self.count(2, (2, 3)), 1)
        self.assertEqual(self.count(3, (2, 3)), 2)
        self.assertEqual(self.count(3, (INF,)), 2)
        # Connected simple graphs on 4 vertices.
        self.assertEqual(self.count(4, (3,)), 6)

    def test_representatives_are_canonical_and_distinct(self):
        matrices = list(enumerate_diagrams(SearchSpec(vertices=(4, 4), alphabet=(2, 3, INF))))
        forms = [canonical_form(m) for m in matrices]
        self.assertEqual(len(set(forms)), len(forms))
        for matrix, form in zip(matrices, forms):
            self.assertEqual(matrix.upper_triangle(), form)
            self.assertTrue(matrix.is_connected())
            self.assertTrue(is_canonical(form, 4))
        self.assertEqual(forms, sorted(forms))

    def test_canonical_form_ignores_vertex_order(self):
        self.assertEqual(canonical_form(HEXAGON_INF), canonical_form(HEXAGON_INF.permuted([3, 0, 5, 1, 4, 2])))

    def test_counts_stable_across_workers(self):
        alphabet = (2, 3, 4, INF)
        single = list(enumerate_diagrams(SearchSpec(vertices=(3, 4), alphabet=alphabet, workers=1)))
        pooled = list(enumerate_diagrams(SearchSpec(vertices=(3, 4), alphabet=alphabet, workers=4)))
        self.assertEqual(single, pooled)


class TestHunt(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        # Every connected diagram with 4 generators over the default alphabet.
        cls.rank_four = hunt(SearchSpec(vertices=(4, 4), workers=4))

    def test_every_rank_three_diagram_has_two_positive_squares(self):
        result = hunt(SearchSpec(vertices=(3, 3)))
        self.assertGreater(result.examined, 0)
        self.assertEqual(len(result.hits), result.examined)
        self.assertTrue(all(hit.signature.p >= 2 for hit in result.hits))
        self.assertEqual(hunt(SearchSpec(vertices=(3, 3), predicate=Predicate.parse("p<2"))).hits, [])

    def test_every_rank_four_diagram_has_three_positive_squares(self):
        self.assertFalse(self.rank_four.truncated)
        self.assertEqual(len(self.rank_four.hits), self.rank_four.examined)
        self.assertEqual([hit for hit in self.rank_four.hits if hit.signature.p <= 2], [])

    def test_affine_signature_iff_affine_name(self):
        for hit in self.rank_four.hits:
            sig = hit.signature
            self.assertEqual((sig.q, sig.r) == (0, 1), hit.component.name.is_affine, hit.matrix.labels)
            self.assertEqual((sig.q, sig.r) == (0, 0), hit.component.name.is_spherical, hit.matrix.labels)

    def test_spherical_iff_ball_closes(self):
        for hit in hunt(SearchSpec(vertices=(2, 3))).hits:
            try:
                closed = enumerate_ball(gram(hit.matrix), 16, budget=2000).closed
            except BudgetExceeded:
                closed = False
            self.assertEqual(closed, hit.component.kind is Kind.SPHERICAL, hit.matrix.labels)

    def test_rank_four_spherical_iff_ball_closes(self):
        spherical = 0
        for hit in self.rank_four.hits:
            form = gram(hit.matrix)
            if hit.component.kind is Kind.SPHERICAL:
                spherical += 1
                # H_4 has the longest reduced word, of length 60, and 14400 elements.
                ball = enumerate_ball(form, 60, budget=14400)
                self.assertTrue(ball.closed, hit.matrix.labels)
                self.assertEqual(len(ball), hit.component.order, hit.matrix.labels)
                continue
            self.assertFalse(enumerate_ball(form, 3).closed, hit.matrix.labels)
            # A finite rank-4 group has Coxeter number at most 30, so a Coxeter element
            # with no power up to 30 equal to I generates an infinite subgroup.
            element = word_matrix(range(4), form)
            power = element
            for k in range(1, 31):
                self.assertFalse(is_identity(power), (hit.matrix.labels, k))
                power = matmul(power, element)
        self.assertEqual(spherical, 5)

    def test_hexagon_is_found(self):
        spec = SearchSpec(vertices=(6, 6), alphabet=(2, INF), predicate=Predicate.parse("p==3 and q==1 and r==2"))
        result = hunt(spec)
        self.assertIn(canonical_form(HEXAGON_INF), [hit.matrix.upper_triangle() for hit in result.hits])
        self.assertTrue(all(hit.component.kind is Kind.NON_AFFINE for hit in result.hits))

    def test_limit(self):
        result = hunt(SearchSpec(vertices=(3, 3), limit=2))
        self.assertTrue(result.truncated)
        self.assertEqual(len(result.hits), 2)

    def test_limit_equal_to_hit_count_is_complete(self):
        everything = hunt(SearchSpec(vertices=(3, 3)))
        total = len(everything.hits)
        exact = hunt(SearchSpec(vertices=(3, 3), limit=total))
        self.assertFalse(exact.truncated)
        self.assertEqual([hit.matrix for hit in exact.hits], [hit.matrix for hit in everything.hits])
        self.assertTrue(hunt(SearchSpec(vertices=(3, 3), limit=total - 1)).truncated)
        # The last hit of a smaller n filling the limit is complete only if no larger n matches.
        spanning = hunt(SearchSpec(vertices=(2, 3), alphabet=(3,), limit=1))
        self.assertTrue(spanning.truncated)
        self.assertEqual(len(spanning.hits), 1)

    def test_hits_sorted_and_deterministic(self):
        spec = SearchSpec(vertices=(3, 3), alphabet=(3, 4, INF), predicate=Predicate.parse("kind==NonAffine"))
        first, second = hunt(spec), hunt(SearchSpec(vertices=(3, 3), alphabet=(3, 4, INF), predicate=spec.predicate, workers=4))
        self.assertEqual([hit.matrix for hit in first.hits], [hit.matrix for hit in second.hits])
        keys = [hit.matrix.upper_triangle() for hit in first.hits]
        self.assertEqual(keys, sorted(keys))

    @patch("coxforge.core.search.signature")
    def test_reverification_failure(self, mock_signature):
        mock_signature.return_value = Signature(0, 0, 0)
        with self.assertRaises(InvariantError):
            hunt(SearchSpec(vertices=(2, 2)))


if __name__ == '__main__':
    unittest.main()

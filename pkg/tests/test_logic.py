import pytest
from hypothesis import given, settings, strategies as st

from systemw.logic import (
    Conditional,
    ConditionalStatus,
    Conj,
    Disj,
    Formula,
    FormulaSyntaxError,
    Neg,
    Signature,
    SignatureError,
    UnknownAtomError,
    Var,
    World,
    evaluate_conditional,
    marginalize,
    merge_worlds,
    mod_set,
    parse_conditional,
    parse_formula,
)

from conftest import world_bits
from oracles import all_assignments, eval_node, oracle_model_bits, random_node


def sig2():
    return Signature(["v", "d"])


class TestSignature:
    def test_duplicate_atoms_rejected(self):
        with pytest.raises(SignatureError):
            Signature(["a", "b", "a"])

    def test_bad_atom_name_rejected(self):
        for bad in ["A", "1x", "", "a-b"]:
            with pytest.raises(SignatureError):
                Signature([bad])

    def test_atom_cap(self):
        Signature([f"x{i}" for i in range(24)])
        with pytest.raises(SignatureError):
            Signature([f"x{i}" for i in range(25)])

    def test_atom_order_fixes_bits(self):
        sig = Signature(["b", "p", "f"])
        w = sig.world(0b101)
        assert w.truth("b") and not w.truth("p") and w.truth("f")

    def test_render_world(self):
        sig = Signature(["b", "p", "f", "v", "d"])
        assert sig.render_world(world_bits(sig, "bpf")) == "bpf!v!d"


class TestParser:
    def test_single_negation(self):
        f = parse_formula("!v", sig2())
        assert f.ast == Neg(Var("v"))

    def test_conjunction(self):
        sig = Signature(["b", "p", "f", "v", "d"])
        f = parse_formula("d,p", sig)
        assert f.ast == Conj((Var("d"), Var("p")))

    def test_precedence_or_under_and(self):
        sig = Signature(["a", "b", "c"])
        f = parse_formula("a;b,c", sig)
        assert f.ast == Disj((Var("a"), Conj((Var("b"), Var("c")))))

    def test_ampersand_alias(self):
        sig = Signature(["a", "b"])
        assert parse_formula("a&b", sig).equivalent(parse_formula("a,b", sig))

    def test_parens_and_constants(self):
        sig = Signature(["a", "b"])
        f = parse_formula("!(a;b),top", sig)
        assert f.mask == parse_formula("!a,!b", sig).mask

    def test_syntax_error_has_position(self):
        with pytest.raises(FormulaSyntaxError) as exc:
            parse_formula("a,,b", Signature(["a", "b"]))
        assert exc.value.position == 2

    def test_unknown_atom_named(self):
        with pytest.raises(UnknownAtomError) as exc:
            parse_formula("a,q", Signature(["a", "b"]))
        assert exc.value.atom == "q"

    def test_trailing_junk_rejected(self):
        with pytest.raises(FormulaSyntaxError):
            parse_formula("a)b", Signature(["a", "b"]))

    def test_bar_not_in_grammar(self):
        with pytest.raises(FormulaSyntaxError):
            parse_formula("a|b", Signature(["a", "b"]))


class TestModSet:
    def test_top_all_worlds(self):
        sig = Signature(["a", "b", "c"])
        assert len(mod_set(parse_formula("top", sig))) == 8

    def test_bot_empty(self):
        sig = Signature(["a", "b", "c"])
        assert mod_set(parse_formula("bot", sig)) == frozenset()

    def test_unique_model(self):
        sig = Signature(["b", "p"])
        models = mod_set(parse_formula("b,!p", sig))
        assert models == frozenset({World(sig, 0b01)})

    def test_set_algebra_exhaustive(self):
        # negation = complement, conjunction = intersection, disjunction = union
        sig = Signature(["a", "b", "c"])
        f = parse_formula("a;!b", sig)
        g = parse_formula("b,c;!a", sig)
        full = sig.full_mask
        assert f.negate().mask == full & ~f.mask
        assert f.conj(g).mask == f.mask & g.mask
        assert Formula(sig, Disj((f.ast, g.ast))).mask == f.mask | g.mask


@st.composite
def sig_and_node(draw):
    n = draw(st.integers(min_value=1, max_value=4))
    atoms = tuple("abcd"[:n])
    seed = draw(st.integers(min_value=0, max_value=2**32 - 1))
    import random

    node = random_node(random.Random(seed), atoms, 3)
    return Signature(atoms), node


@given(sig_and_node())
@settings(max_examples=150, deadline=None)
def test_mask_matches_pointwise_evaluation(sn):
    sig, node = sn
    f = Formula(sig, node)
    assert {w for w in range(sig.num_worlds) if (f.mask >> w) & 1} == {
        bits for bits, asg in all_assignments(sig) if eval_node(node, asg)
    }


@given(sig_and_node())
@settings(max_examples=150, deadline=None)
def test_print_parse_round_trip(sn):
    sig, node = sn
    f = Formula(sig, node)
    assert parse_formula(str(f), sig).mask == f.mask


class TestConditional:
    def test_verified(self, example1):
        sig = example1.signature
        c = example1[0]  # (f|b)
        w = World(sig, world_bits(sig, "bf"))
        assert evaluate_conditional(c, w) is ConditionalStatus.VERIFIED

    def test_falsified(self, example1):
        sig = example1.signature
        c = example1[3]  # (!f|p)
        w = World(sig, world_bits(sig, "pbf"))
        assert evaluate_conditional(c, w) is ConditionalStatus.FALSIFIED

    def test_not_applicable(self, example1):
        sig = example1.signature
        c = example1[1]  # (!v|d)
        w = World(sig, world_bits(sig, ""))
        assert evaluate_conditional(c, w) is ConditionalStatus.NOT_APPLICABLE

    def test_statuses_partition_worlds(self, example1):
        for c in example1:
            for w in example1.signature.worlds():
                statuses = [
                    s for s in ConditionalStatus if evaluate_conditional(c, w) is s
                ]
                assert len(statuses) == 1

    def test_parse_and_print(self):
        sig = Signature(["a", "b"])
        c = parse_conditional(" ( !b | a ) ", sig)
        assert str(c) == "(!b|a)"

    def test_mixed_signatures_rejected(self):
        f1 = parse_formula("a", Signature(["a"]))
        f2 = parse_formula("b", Signature(["b"]))
        with pytest.raises(SignatureError):
            Conditional(f1, f2)


class TestMergeMarginalize:
    def test_merge(self):
        s1, s2 = Signature(["b", "f"]), Signature(["d"])
        target = Signature(["b", "f", "d"])
        w = merge_worlds(World(s1, 0b11), World(s2, 0b1), target)
        assert w.bits == 0b111

    def test_merge_with_empty(self):
        s1, s2 = Signature(["b", "f"]), Signature([])
        target = Signature(["b", "f"])
        assert merge_worlds(World(s1, 0b10), World(s2, 0), target).bits == 0b10

    def test_overlap_rejected(self):
        s1, s2 = Signature(["a", "b"]), Signature(["b"])
        with pytest.raises(SignatureError):
            merge_worlds(World(s1, 0), World(s2, 0), Signature(["a", "b"]))

    def test_target_mismatch_rejected(self):
        s1, s2 = Signature(["a"]), Signature(["b"])
        with pytest.raises(SignatureError):
            merge_worlds(World(s1, 0), World(s2, 0), Signature(["a", "b", "c"]))

    def test_marginalize(self):
        sig = Signature(["b", "p", "f", "v", "d"])
        w = World(sig, world_bits(sig, "bfv"))
        sub = Signature(["v", "d"])
        assert marginalize(w, sub) == World(sub, 0b01)

    def test_marginalize_identity_and_empty(self):
        sig = Signature(["a", "b"])
        w = World(sig, 0b10)
        assert marginalize(w, sig) == w
        assert marginalize(w, Signature([])).bits == 0

    def test_not_subset_rejected(self):
        sig = Signature(["a"])
        with pytest.raises(SignatureError):
            marginalize(World(sig, 0), Signature(["b"]))

    @given(st.integers(0, 3), st.integers(0, 7))
    @settings(deadline=None)
    def test_round_trip(self, bits1, bits2):
        s1, s2 = Signature(["a", "b"]), Signature(["x", "y", "z"])
        target = Signature(["a", "x", "b", "y", "z"])  # interleaved on purpose
        w1, w2 = World(s1, bits1), World(s2, bits2)
        merged = merge_worlds(w1, w2, target)
        assert marginalize(merged, s1) == w1
        assert marginalize(merged, s2) == w2


def test_oracle_agreement_on_example_formulas(example1):
    sig = example1.signature
    for text in ["d,p", "!v", "b;!p,f", "top", "bot", "!(b;p),f"]:
        f = parse_formula(text, sig)
        assert {
            w for w in range(sig.num_worlds) if (f.mask >> w) & 1
        } == oracle_model_bits(f)

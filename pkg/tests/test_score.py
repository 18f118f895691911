import random
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from docmeter.score import (
    classify_word,
    doc_word_bag,
    is_meaningless,
    score_function,
)
from docmeter.tokenizer import DEFAULT_STOP_WORDS, partition_text

from reference import brute_force_score

TOOLTIP_DOC = "Sets the tool tip text.\n\n@param text  the text of the tool tip"
TOOLTIP_SIG = frozenset({"set", "tool", "tip", "text", "string", "public", "void"})


def test_is_meaningless_examples():
    assert is_meaningless("information", frozenset({"info", "read"}))
    assert not is_meaningless("tool", frozenset())
    assert is_meaningless("sets", frozenset({"set", "text"}))


def test_is_meaningless_direct_inclusion_then_reverse():
    sig = frozenset({"sets"})
    assert is_meaningless("sets", sig)
    # reverse check never uses 1-letter or stop signature words
    assert not is_meaningless("nothing", frozenset({"n", "o"}))
    assert not is_meaningless("fortune", frozenset({"for"}))
    # but a stop word in the signature still matches directly
    assert is_meaningless("and", frozenset({"and"}))


def test_classify_word_reasons():
    verdict, reason = classify_word("tool", TOOLTIP_SIG)
    assert verdict == "meaningless" and "signature" in reason
    verdict, reason = classify_word("sets", TOOLTIP_SIG)
    assert verdict == "meaningless" and "'set'" in reason
    verdict, reason = classify_word("param", TOOLTIP_SIG)
    assert verdict == "meaningful"


def test_doc_word_bag_counts():
    bag = doc_word_bag(TOOLTIP_DOC)
    assert bag.source_total == 13
    assert bag.words == (
        "sets", "tool", "tip", "text", "param", "text", "text", "tool", "tip",
    )


def test_tooltip_fixture_scores_eight_ninths():
    record = score_function(doc_word_bag(TOOLTIP_DOC), TOOLTIP_SIG)
    assert record.total_words == 13
    assert record.meaningful_words == 9
    assert record.meaningless_words == 8
    assert record.meaningless == Fraction(8, 9)


def test_full_overlap_scores_one():
    bag = doc_word_bag("tool tip text")
    record = score_function(bag, frozenset({"tool", "tip", "text"}))
    assert record.meaningless == 1


def test_zero_overlap_scores_zero():
    bag = doc_word_bag("compute weighted average")
    record = score_function(bag, frozenset({"tool", "tip"}))
    assert record.meaningless == 0


def test_no_meaningful_words_is_undefined():
    bag = doc_word_bag("In it.")
    record = score_function(bag, frozenset({"setup"}))
    assert record.total_words == 2
    assert record.meaningful_words == 0
    assert record.meaningless_words == 0
    assert record.meaningless is None


def test_repetitions_count_with_multiplicity():
    bag = doc_word_bag("tool tool tool novel")
    record = score_function(bag, frozenset({"tool"}))
    assert record.meaningful_words == 4
    assert record.meaningless_words == 3


def test_custom_stop_words_flow_through_both_checks():
    stops = frozenset({"tool"})
    bag = doc_word_bag("tool tooling tipped", stops)
    # "tool" is filtered from the doc side; "tool" in the signature may not
    # take part in the reverse check either
    record = score_function(bag, frozenset({"tool"}), stops)
    assert record.meaningful_words == 2
    assert record.meaningless_words == 0


words = st.sampled_from(
    "set sets info information tool tip text data index value util parse and or is".split()
)
sig_sets = st.frozensets(
    st.sampled_from("set info tool tip text data x f n the for value parse".split()),
    max_size=8,
)
bags = st.lists(words, max_size=12)


@settings(max_examples=300, deadline=None)
@given(bags, sig_sets)
def test_matches_brute_force_reference(doc_words, sig):
    bag = doc_word_bag(" ".join(doc_words))
    record = score_function(bag, sig)
    total, meaningful, meaningless, score = brute_force_score(doc_words, sig)
    assert record.total_words == total
    assert record.meaningful_words == meaningful
    assert record.meaningless_words == meaningless
    assert record.meaningless == score


@settings(max_examples=300, deadline=None)
@given(bags, sig_sets, st.sampled_from("set info tool grid zz".split()))
def test_monotone_under_signature_growth(doc_words, sig, extra):
    bag = doc_word_bag(" ".join(doc_words))
    before = score_function(bag, sig)
    after = score_function(bag, sig | {extra})
    if before.meaningless is not None:
        assert after.meaningless >= before.meaningless


@settings(max_examples=300, deadline=None)
@given(bags, sig_sets, st.randoms(use_true_random=False))
def test_permutation_invariant(doc_words, sig, rng):
    bag = doc_word_bag(" ".join(doc_words))
    shuffled = list(bag.words)
    rng.shuffle(shuffled)
    permuted = type(bag)(words=tuple(shuffled), source_total=bag.source_total)
    assert score_function(bag, sig).meaningless == score_function(permuted, sig).meaningless


@settings(max_examples=300, deadline=None)
@given(bags, sig_sets)
def test_duplication_leaves_score_unchanged(doc_words, sig):
    bag = doc_word_bag(" ".join(doc_words))
    doubled = type(bag)(words=bag.words + bag.words, source_total=2 * bag.source_total)
    one = score_function(bag, sig)
    two = score_function(doubled, sig)
    assert one.meaningless == two.meaningless
    assert two.meaningless_words == 2 * one.meaningless_words


@settings(max_examples=300, deadline=None)
@given(bags, sig_sets)
def test_score_is_a_fraction_in_unit_interval(doc_words, sig):
    record = score_function(doc_word_bag(" ".join(doc_words)), sig)
    assert 0 <= record.meaningless_words <= record.meaningful_words <= record.total_words
    if record.meaningless is not None:
        assert 0 <= record.meaningless <= 1

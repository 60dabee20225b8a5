import pytest

from dimdraw import (CycleError, FormalContext, ParseError, PosetInput,
                     parse_csv, parse_cxt, poset_to_context, write_cxt)
from helpers import life_context, life_csv_text, life_cxt_text, LIFE_ROWS


def test_parse_smallest_context():
    ctx = parse_cxt("B\n\n1\n1\ng\nm\nX\n")
    assert ctx.objects == ("g",)
    assert ctx.attributes == ("m",)
    assert ctx.incidence == {(0, 0)}


def test_parse_life_incidence_count():
    ctx = parse_cxt(life_cxt_text())
    # oracle: count the crosses in the table by hand / per row
    assert sum(row.count("X") for row in LIFE_ROWS) == 34
    assert len(ctx.incidence) == 34
    assert ctx == life_context()


def test_row_length_mismatch_names_line():
    with pytest.raises(ParseError) as err:
        parse_cxt("B\n\n1\n1\ng\nm\nX.\n")
    assert "row length mismatch" in str(err.value)
    assert err.value.line == 7


def test_malformed_header():
    with pytest.raises(ParseError) as err:
        parse_cxt("A\n\n1\n1\ng\nm\nX\n")
    assert err.value.line == 1
    with pytest.raises(ParseError) as err:
        parse_cxt("B\nnot blank\n1\n1\ng\nm\nX\n")
    assert err.value.line == 2


def test_malformed_counts():
    with pytest.raises(ParseError) as err:
        parse_cxt("B\n\nzzz\n1\ng\nm\nX\n")
    assert err.value.line == 3
    with pytest.raises(ParseError) as err:
        parse_cxt("B\n\n1\n-2\ng\nm\nX\n")
    assert err.value.line == 4


def test_truncated_input_names_next_line():
    with pytest.raises(ParseError) as err:
        parse_cxt("B\n\n2\n1\ng")
    assert "unexpected end of input" in str(err.value)


def test_illegal_character():
    with pytest.raises(ParseError) as err:
        parse_cxt("B\n\n1\n1\ng\nm\n?\n")
    assert "illegal character" in str(err.value)
    assert err.value.line == 7


def test_duplicate_names_rejected():
    with pytest.raises(ParseError) as err:
        parse_cxt("B\n\n2\n1\ng\ng\nm\nX\nX\n")
    assert "duplicate object name" in str(err.value)
    assert err.value.line == 6
    with pytest.raises(ParseError) as err:
        parse_cxt("B\n\n1\n2\ng\nm\nm\nXX\n")
    assert "duplicate attribute name" in str(err.value)


def test_trailing_content_rejected():
    with pytest.raises(ParseError):
        parse_cxt("B\n\n1\n1\ng\nm\nX\nleftover\n")


def test_round_trip_smallest():
    ctx = parse_cxt("B\n\n1\n1\ng\nm\nX\n")
    assert parse_cxt(write_cxt(ctx)) == ctx


def test_round_trip_life():
    ctx = life_context()
    again = parse_cxt(write_cxt(ctx))
    assert again == ctx
    assert len(again.incidence) == 34


def test_empty_incidence_body_rows():
    ctx = FormalContext(("g1", "g2"), ("m1", "m2"), frozenset())
    text = write_cxt(ctx)
    assert text.split("\n")[8:10] == ["..", ".."]
    assert parse_cxt(text) == ctx


def test_csv_smallest():
    ctx = parse_csv("obj,a\ng,X\n")
    assert ctx.objects == ("g",)
    assert ctx.attributes == ("a",)
    assert ctx.incidence == {(0, 0)}


def test_csv_ragged_row():
    with pytest.raises(ParseError) as err:
        parse_csv("obj,a,b\ng,X\n")
    assert "ragged row" in str(err.value)
    assert err.value.line == 2


def test_csv_one_means_cross():
    assert parse_csv("obj,a\ng,1\n") == parse_csv("obj,a\ng,X\n")
    assert parse_csv("obj,a\ng,x\n") == parse_csv("obj,a\ng,X\n")
    assert parse_csv("obj,a\ng,0\n") == parse_csv("obj,a\ng,.\n")


def test_csv_rejects_unknown_cell():
    with pytest.raises(ParseError):
        parse_csv("obj,a\ng,yes\n")


def test_csv_duplicate_names():
    with pytest.raises(ParseError):
        parse_csv("obj,a,a\ng,X,X\n")
    with pytest.raises(ParseError):
        parse_csv("obj,a\ng,X\ng,X\n")


def test_csv_matches_cxt_on_life():
    assert parse_csv(life_csv_text()) == parse_cxt(life_cxt_text())


def test_poset_antichain():
    p = PosetInput(("a", "b"), frozenset())
    ctx = poset_to_context(p)
    assert ctx.objects == ("a", "b")
    assert ctx.incidence == {(0, 0), (1, 1)}


def test_poset_two_chain():
    p = PosetInput(("a", "b"), frozenset({("a", "b")}))
    ctx = poset_to_context(p)
    assert ctx.incidence == {(0, 0), (0, 1), (1, 1)}


def test_poset_cycle_rejected_with_witness():
    p = PosetInput(("a", "b"), frozenset({("a", "b"), ("b", "a")}))
    with pytest.raises(CycleError) as err:
        poset_to_context(p)
    assert "a" in err.value.witness and "b" in err.value.witness
    assert err.value.witness[0] == err.value.witness[-1]


def test_poset_transitive_closure_is_reflexive_and_transitive():
    p = PosetInput(("a", "b", "c", "d"),
                   frozenset({("a", "b"), ("b", "c")}))
    ctx = poset_to_context(p)
    n = len(ctx.objects)
    inc = ctx.incidence
    assert all((i, i) in inc for i in range(n))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if (i, j) in inc and (j, k) in inc:
                    assert (i, k) in inc
    assert (0, 2) in inc and (0, 3) not in inc


def test_poset_unknown_element_in_pair():
    with pytest.raises(ValueError):
        PosetInput(("a",), frozenset({("a", "zz")}))


def test_context_rejects_out_of_range_cells():
    with pytest.raises(ValueError):
        FormalContext(("g",), ("m",), frozenset({(0, 1)}))


def test_context_rejects_duplicate_names():
    with pytest.raises(ValueError):
        FormalContext(("g", "g"), ("m",), frozenset())

import pytest

from core.errors import MalformedSignatureError, WidthLimitError
from core.signature import (
    EdgeState,
    Signature,
    free_end_position,
    matching_arc,
    pack,
    split_height,
    unpack,
)
from tests.conftest import all_signatures


def test_pack_unpack_every_small_signature():
    for width in range(0, 8):
        for start in (0, 1):
            for sig in all_signatures(width, start):
                assert unpack(sig.bits, width) == sig.states
                assert Signature.from_text(sig.render(), start) == sig


def test_empty_word_and_initial_walk_state():
    assert pack([]) == 0
    assert Signature(0, 0, 0).states == ()
    sig = Signature.from_text("∘∘∘∘)")
    assert sig[4] == EdgeState.UPPER
    assert Signature(sig.width, sig.bits) == sig


def test_edge_codes():
    assert int(EdgeState.EMPTY) == 0
    assert int(EdgeState.UPPER) == 1
    assert int(EdgeState.LOWER) == 2
    assert Signature.from_text("()", 0).bits == 0b0110


def test_invalid_signatures():
    with pytest.raises(MalformedSignatureError):
        unpack(0b11, 1)
    with pytest.raises(MalformedSignatureError):
        unpack(0b0100, 1)
    with pytest.raises(MalformedSignatureError):
        Signature.from_text("((")
    with pytest.raises(MalformedSignatureError):
        Signature.from_text(")(", 0)
    with pytest.raises(MalformedSignatureError):
        Signature.from_text("(x)", 0)
    with pytest.raises(WidthLimitError):
        Signature(32, 0, 0)


def test_matching_arc():
    assert matching_arc(Signature.from_text("()", 0), 0) == 1
    assert matching_arc(Signature.from_text("(())", 0), 0) == 3
    sig = Signature.from_text("(()())", 0)
    assert matching_arc(sig, 1) == 2
    assert matching_arc(sig, 3) == 4
    assert matching_arc(sig, 0) == 5
    assert matching_arc(sig, 5) == 0
    with pytest.raises(MalformedSignatureError):
        matching_arc(Signature.from_text("(∘)", 0), 1)


def test_free_end_position():
    assert free_end_position(Signature.from_text(")∘∘")) == 0
    assert free_end_position(Signature.from_text("())")) == 2
    assert free_end_position(Signature.from_text("(∘)|)()∘")) == 3
    with pytest.raises(MalformedSignatureError):
        free_end_position(Signature.from_text("()", 0))


def test_split_height():
    sig = Signature.from_text("(∘))()∘")
    start = split_height(sig, 0)
    assert start.height == 1 and start.left == ()
    end = split_height(sig, sig.width)
    assert end.height == 0 and end.right == ()
    middle = split_height(sig, 3)
    assert middle.height == 1
    assert middle.left == (EdgeState.LOWER, EdgeState.EMPTY, EdgeState.UPPER)
    assert middle.right == (EdgeState.EMPTY, EdgeState.LOWER, EdgeState.UPPER, EdgeState.LOWER)
    with pytest.raises(ValueError):
        split_height(sig, 8)


def test_render_with_divider():
    assert Signature.from_text("(∘))()∘").render(3) == "(∘)|)()∘"

import math
import struct

import numpy as np
import pytest

from vanlearn.codec import (
    Dataset,
    dataset_of,
    decode_wire,
    encode_wire,
    export,
    lex_number,
    parse_csv,
    render_number,
)
from vanlearn.errors import (
    DuplicateColumnError,
    EmptyError,
    EncodingError,
    FormatError,
    KeyMismatchError,
    RaggedError,
    SchemaError,
    WireSyntaxError,
)


def bits(x: float) -> bytes:
    return struct.pack("<d", x)


def datasets_bit_equal(a: Dataset, b: Dataset) -> bool:
    """Equality that distinguishes -0.0 from 0.0 and text from numbers."""
    if a.columns != b.columns or a.n_rows != b.n_rows:
        return False
    for ra, rb in zip(a.rows, b.rows):
        for ca, cb in zip(ra, rb):
            if type(ca) is not type(cb):
                return False
            if isinstance(ca, float):
                if bits(ca) != bits(cb):
                    return False
            elif ca != cb:
                return False
    return True


# ---------------------------------------------------------------------------
# number lexing / rendering


def test_lex_number_accepts_standard_forms():
    assert lex_number("3") == 3.0
    assert lex_number("-2.5") == -2.5
    assert lex_number("+.5") == 0.5
    assert lex_number("1e3") == 1000.0
    assert lex_number("2.5E-2") == 0.025
    assert lex_number("7.") == 7.0


def test_lex_number_rejects_non_numbers():
    for bad in ("", "abc", " 1", "1 ", "nan", "NaN", "inf", "Infinity", "0x10", "1e", "--3", "1,000"):
        assert lex_number(bad) is None


def test_lex_number_rejects_overflowing_literal():
    assert lex_number("1e999") is None


def test_render_number_forms():
    assert render_number(3.0) == "3"
    assert render_number(-42.0) == "-42"
    assert render_number(0.5) == "0.5"
    assert render_number(-0.0) == "-0.0"
    assert render_number(0.0) == "0"
    assert render_number(1e16) == "1e+16"
    assert render_number(123456.75) == "123456.75"


def test_render_number_round_trips_random_floats():
    rng = np.random.default_rng(5)
    values = list(rng.normal(scale=1e6, size=300)) + list(rng.uniform(-1, 1, 300))
    values += [0.0, -0.0, 1e-300, -1e300, 2.0**52, 0.1, 1 / 3]
    for v in values:
        v = float(v)
        back = lex_number(render_number(v))
        assert back is not None and bits(back) == bits(v)


# ---------------------------------------------------------------------------
# Dataset construction


def test_dataset_rejects_bad_columns():
    with pytest.raises(DuplicateColumnError):
        Dataset(("a", "a"), ())
    with pytest.raises(SchemaError):
        Dataset(("a", ""), ())


def test_dataset_rejects_ragged_and_dirty_rows():
    with pytest.raises(RaggedError):
        Dataset(("a", "b"), ((1.0,),))
    with pytest.raises(SchemaError):
        Dataset(("a",), ((float("nan"),),))
    with pytest.raises(SchemaError):
        Dataset(("a",), ((True,),))


def test_dataset_of_promotes_ints():
    d = dataset_of(("a",), [(3,)])
    assert isinstance(d.rows[0][0], float)


def test_numeric_column_predicate():
    d = dataset_of(("a", "b"), [(1, "x"), (2, "y")])
    assert d.is_numeric_column(0) and not d.is_numeric_column(1)
    assert d.column(1) == ["x", "y"]


# ---------------------------------------------------------------------------
# CSV parsing


def test_parse_csv_basic():
    d = parse_csv(b"a,b\n1,hello\n2.5,world\n")
    assert d.columns == ("a", "b")
    assert d.rows == ((1.0, "hello"), (2.5, "world"))


def test_parse_csv_crlf_and_bom():
    d = parse_csv("﻿a,b\r\n1,2\r\n".encode("utf-8"))
    assert d.columns == ("a", "b")
    assert d.rows == ((1.0, 2.0),)


def test_parse_csv_quoted_fields():
    raw = b'name,note\nx,"a, b"\ny,"line\nbreak"\nz,"with ""quotes"""\n'
    d = parse_csv(raw)
    assert d.rows[0][1] == "a, b"
    assert d.rows[1][1] == "line\nbreak"
    assert d.rows[2][1] == 'with "quotes"'


def test_parse_csv_header_only():
    d = parse_csv(b"a,b\n")
    assert d.n_rows == 0 and d.columns == ("a", "b")


def test_parse_csv_errors():
    with pytest.raises(EmptyError):
        parse_csv(b"")
    with pytest.raises(RaggedError):
        parse_csv(b"a,b\n1\n")
    with pytest.raises(DuplicateColumnError):
        parse_csv(b"a,a\n1,2\n")
    with pytest.raises(SchemaError):
        parse_csv(b"a,\n1,2\n")
    with pytest.raises(EncodingError):
        parse_csv(b"a\n\xff\xfe\n")


def test_parse_csv_skips_blank_lines():
    d = parse_csv(b"a\n1\n\n2\n")
    assert d.rows == ((1.0,), (2.0,))


# ---------------------------------------------------------------------------
# wire format


def test_encode_wire_hand_example():
    d = dataset_of(("a", "b"), [(1, "x"), (2.5, "y,z")])
    assert encode_wire(d) == '{"a":1,"b":"x"},{"a":2.5,"b":"y,z"}'


def test_decode_wire_hand_example():
    d = decode_wire('{"a":1,"b":"x"},{"a":2.5,"b":"y,z"}')
    assert d.columns == ("a", "b")
    assert d.rows == ((1.0, "x"), (2.5, "y,z"))


def test_decode_wire_commas_inside_strings_and_numbers():
    d = decode_wire('{"t":"a,{b},[c]","n":-1.5e2}')
    assert d.rows == (("a,{b},[c]", -150.0),)


def test_decode_wire_column_order_from_first_object():
    d = decode_wire('{"b":1,"a":2},{"a":4,"b":3}')
    assert d.columns == ("b", "a")
    assert d.rows == ((1.0, 2.0), (3.0, 4.0))


def test_decode_wire_key_set_mismatch():
    with pytest.raises(KeyMismatchError):
        decode_wire('{"a":1},{"b":2}')
    with pytest.raises(KeyMismatchError):
        decode_wire('{"a":1},{"a":2,"b":3}')


def test_decode_wire_syntax_errors():
    for bad in (
        '{"a":1},',
        '{"a":1}},{',
        '[1,2]',
        '{"a":[1]}',
        '{"a":{"b":1}}',
        '{"a":true}',
        '{"a":null}',
        '{"a":NaN}',
        '{"a":Infinity}',
        '{"a":1e400}',
        '{"a":1,"a":2}',
        '{"":1}',
        '{"a":"unterminated}',
        'not json',
    ):
        with pytest.raises(WireSyntaxError):
            decode_wire(bad)


def test_decode_wire_huge_integer_literal():
    with pytest.raises(WireSyntaxError):
        decode_wire('{"a":' + "9" * 400 + "}")


def test_decode_wire_empty_payload():
    with pytest.raises(EmptyError):
        decode_wire("")


def test_wire_round_trip_with_empty_text_and_unicode():
    d = dataset_of(("k", "v"), [("", 1), ("héllo", -0.0), ('q"q', 2)])
    assert datasets_bit_equal(decode_wire(encode_wire(d)), d)


# ---------------------------------------------------------------------------
# export


def test_export_csv_and_txt():
    d = dataset_of(("a", "b"), [(1, "x"), (2.5, "y")])
    assert export(d, "csv") == b"a,b\n1,x\n2.5,y\n"
    assert export(d, "txt") == b"a\tb\n1\tx\n2.5\ty\n"


def test_export_quotes_only_where_needed():
    d = dataset_of(("a",), [("has, comma",), ("plain",)])
    assert export(d, "csv") == b'a\n"has, comma"\nplain\n'


def test_export_unknown_format():
    with pytest.raises(FormatError):
        export(dataset_of(("a",), []), "pdf")


# ---------------------------------------------------------------------------
# randomized round trips (the big 1000-case run lives in the acceptance suite)


def random_dataset(rng: np.random.Generator, csv_safe: bool) -> Dataset:
    """Random mixed table. csv_safe text never lexes as a number and is
    non-empty, because CSV carries no type tags to restore such cells."""
    n_cols = int(rng.integers(1, 6))
    n_rows = int(rng.integers(0, 8))
    columns = tuple(f"c{j}" for j in range(n_cols))
    kinds = [str(rng.choice(["num", "text"])) for _ in range(n_cols)]
    words = ["alpha", "héllo", "x y", 'q"q', "a,b", "{brace}", "[idx]", "tab\tin", "1x", "end"]
    if not csv_safe:
        words += ["", " ", " 5", "6 "]
    rows = []
    for _ in range(n_rows):
        row: list = []
        for kind in kinds:
            if kind == "num":
                choice = rng.integers(0, 4)
                if choice == 0:
                    row.append(float(rng.integers(-1000, 1000)))
                elif choice == 1:
                    row.append(float(rng.normal(scale=10.0)))
                elif choice == 2:
                    row.append(float(rng.normal(scale=1e8)))
                else:
                    row.append(-0.0 if rng.integers(2) else 0.5)
            else:
                row.append(str(rng.choice(words)))
        rows.append(tuple(row))
    return Dataset(columns, tuple(rows))


def test_random_wire_round_trips():
    rng = np.random.default_rng(2024)
    for _ in range(200):
        d = random_dataset(rng, csv_safe=False)
        if d.n_rows == 0:
            continue  # the wire format cannot carry a rowless table
        assert datasets_bit_equal(decode_wire(encode_wire(d)), d)


def test_random_csv_round_trips():
    rng = np.random.default_rng(4048)
    for _ in range(200):
        d = random_dataset(rng, csv_safe=True)
        assert datasets_bit_equal(parse_csv(export(d, "csv")), d)


def test_csv_then_wire_chain():
    rng = np.random.default_rng(99)
    for _ in range(50):
        d = random_dataset(rng, csv_safe=True)
        if d.n_rows == 0:
            continue
        chained = decode_wire(encode_wire(parse_csv(export(d, "csv"))))
        assert datasets_bit_equal(chained, d)

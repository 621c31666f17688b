import pytest

from imbtab import (
    CATEGORICAL,
    MISSING,
    NUMERIC,
    TARGET,
    ColumnSchema,
    Dataset,
    SplitSpec,
    cast_columns,
    class_counts,
    drop_missing,
    load_csv,
    train_test_split,
)
from imbtab.errors import EmptyDataset, HeaderMismatch, UncastTarget, UnknownColumn

SCHEMA2 = (ColumnSchema("gender", CATEGORICAL), ColumnSchema("target", TARGET))
SCHEMA3 = (
    ColumnSchema("x", NUMERIC),
    ColumnSchema("gender", CATEGORICAL),
    ColumnSchema("target", TARGET),
)


def write(tmp_path, text, name="d.csv"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


class TestLoadCsv:
    def test_basic_parse(self, tmp_path):
        path = write(tmp_path, "gender,target\nm,1\nf,0\nm,1\n")
        d = load_csv(path, SCHEMA2)
        assert d.row_count == 3
        assert d.column("gender") == ["m", "f", "m"]
        assert d.column("target") == [1, 0, 1]

    def test_header_order_insensitive(self, tmp_path):
        path = write(tmp_path, "target,gender\n1,m\n")
        d = load_csv(path, SCHEMA2)
        assert d.rows[0] == ("m", 1)

    def test_header_mismatch(self, tmp_path):
        path = write(tmp_path, "gender,label\nm,1\n")
        with pytest.raises(HeaderMismatch) as exc:
            load_csv(path, SCHEMA2)
        assert exc.value.missing == ["target"]
        assert exc.value.extra == ["label"]

    def test_empty_numeric_cell_is_missing(self, tmp_path):
        path = write(tmp_path, "x,gender,target\n,m,1\n0.92,f,0\n")
        d = load_csv(path, SCHEMA3)
        assert d.rows[0][0] is MISSING
        assert d.rows[1][0] == 0.92

    def test_nan_token_is_missing(self, tmp_path):
        path = write(tmp_path, "x,gender,target\nNaN,m,1\n")
        d = load_csv(path, SCHEMA3)
        assert d.rows[0][0] is MISSING

    def test_bad_target_is_missing(self, tmp_path):
        path = write(tmp_path, "gender,target\nm,yes\n")
        d = load_csv(path, SCHEMA2)
        assert d.rows[0][1] is MISSING

    def test_missing_file(self):
        with pytest.raises(FileNotFoundError):
            load_csv("/nonexistent/file.csv", SCHEMA2)


class TestDropMissing:
    def test_drops_rows_with_any_missing(self):
        d = Dataset(SCHEMA2, [("m", 1), (MISSING, 0), ("f", 0)])
        out = drop_missing(d)
        assert out.rows == (("m", 1), ("f", 0))

    def test_identity_when_complete(self):
        d = Dataset(SCHEMA2, [("m", 1), ("f", 0)])
        assert drop_missing(d).rows == d.rows

    def test_all_missing_gives_empty(self):
        d = Dataset(SCHEMA2, [(MISSING, 1), ("f", MISSING)])
        assert drop_missing(d).row_count == 0

    def test_idempotent(self):
        d = Dataset(SCHEMA2, [("m", 1), (MISSING, 0)])
        once = drop_missing(d)
        assert drop_missing(once).rows == once.rows


class TestCastColumns:
    def test_target_strings_to_ints(self):
        d = Dataset(SCHEMA2, [("m", "0"), ("f", "1")])
        out = cast_columns(d, SCHEMA2)
        assert out.column("target") == [0, 1]

    def test_uncastable_target_becomes_missing(self):
        d = Dataset(SCHEMA2, [("m", "yes")])
        out = cast_columns(d, SCHEMA2)
        assert out.rows[0][1] is MISSING
        assert drop_missing(out).row_count == 0

    def test_numeric_string(self):
        d = Dataset(SCHEMA3, [("0.92", "m", "1")])
        out = cast_columns(d, SCHEMA3)
        assert out.rows[0][0] == 0.92

    def test_unknown_column(self):
        d = Dataset(SCHEMA2, [("m", 1)])
        with pytest.raises(UnknownColumn):
            cast_columns(d, (ColumnSchema("nope", NUMERIC),))


def make_labeled(n_pos, n_neg):
    rows = [("a", 1)] * n_pos + [("b", 0)] * n_neg
    return Dataset(SCHEMA2, rows)


class TestTrainTestSplit:
    def test_reference_split_sizes(self):
        d = make_labeled(1400, 7555)  # 8955 rows
        train, test = train_test_split(d, SplitSpec(0.2, seed=0))
        assert (train.row_count, test.row_count) == (7164, 1791)

    def test_zero_fraction(self):
        d = make_labeled(2, 3)
        train, test = train_test_split(d, SplitSpec(0.0))
        assert test.row_count == 0
        assert train.rows == d.rows

    def test_stratified_balanced(self):
        d = make_labeled(50, 50)
        _, test = train_test_split(d, SplitSpec(0.2, seed=1, stratified=True))
        assert class_counts(test) == {0: 10, 1: 10}

    def test_exact_partition(self):
        d = make_labeled(13, 29)
        train, test = train_test_split(d, SplitSpec(0.3, seed=9))
        merged = sorted(train.rows + test.rows)
        assert merged == sorted(d.rows)
        assert train.row_count + test.row_count == d.row_count

    def test_seed_determinism(self):
        d = make_labeled(40, 60)
        a = train_test_split(d, SplitSpec(0.25, seed=7))
        b = train_test_split(d, SplitSpec(0.25, seed=7))
        assert a[0].rows == b[0].rows and a[1].rows == b[1].rows

    def test_counts_additive(self):
        d = make_labeled(33, 67)
        train, test = train_test_split(d, SplitSpec(0.4, seed=2))
        total = {k: class_counts(train)[k] + class_counts(test)[k] for k in (0, 1)}
        assert total == class_counts(d)

    def test_empty_dataset(self):
        d = Dataset(SCHEMA2, [])
        with pytest.raises(EmptyDataset):
            train_test_split(d, SplitSpec(0.2))


class TestClassCounts:
    def test_counts(self):
        d = Dataset(SCHEMA2, [("a", 1), ("b", 0), ("c", 1)])
        assert class_counts(d) == {0: 1, 1: 2}

    def test_empty(self):
        assert class_counts(Dataset(SCHEMA2, [])) == {0: 0, 1: 0}

    def test_uncast_target(self):
        d = Dataset(SCHEMA2, [("a", "1")])
        with pytest.raises(UncastTarget):
            class_counts(d)

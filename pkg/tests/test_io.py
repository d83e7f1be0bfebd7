import json

import numpy as np
import pytest

from channels import random_channel, xor_channel
from statemask import io as smio
from statemask.discrete.frontier import RateQuintuple, RegionFrontier, make_frontier
from statemask.discrete.search import zero_rate_region
from statemask.probcore import ValidationError


def identity_doc():
    kernel = []
    for x in range(2):
        for s in range(2):
            p = [[0.0, 0.0], [0.0, 0.0]]
            p[x][x] = 1.0
            kernel.append({"x": x, "s": s, "p": p})
    return {"card_s": 2, "card_x": 2, "card_y1": 2, "card_y2": 2,
            "state_pmf": [0.5, 0.5], "kernel": kernel}


def write(tmp_path, doc, name="ch.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
    return path


class TestChannelFile:
    def test_identity(self, tmp_path):
        ch = smio.parse_channel_file(write(tmp_path, identity_doc()))
        assert ch.kernel.shape == (2, 2, 2, 2)
        assert np.all(ch.cost == 0) and ch.cost_budget == np.inf

    def test_row_sum_rejected(self, tmp_path):
        doc = identity_doc()
        doc["kernel"][3]["p"] = [[0.0, 0.0], [0.0, 0.999]]
        with pytest.raises(ValidationError, match=r"x=1, s=1"):
            smio.parse_channel_file(write(tmp_path, doc))

    def test_round_trip(self, tmp_path):
        ch = random_channel(np.random.default_rng(5), cs=3, cx=2, c1=2, c2=3)
        ch = type(ch)(ch.state_pmf, ch.kernel, np.array([0.0, 1.5]), 0.75)
        path = tmp_path / "rt.json"
        smio.write_channel_file(ch, path)
        back = smio.parse_channel_file(path)
        assert np.array_equal(back.kernel, ch.kernel)
        assert np.array_equal(back.state_pmf, ch.state_pmf)
        assert np.array_equal(back.cost, ch.cost) and back.cost_budget == 0.75

    def test_parse_error_position(self, tmp_path):
        with pytest.raises(smio.ParseError, match=r":2:"):
            smio.parse_channel_file(write(tmp_path, '{\n "card_s": ,\n}'))

    @pytest.mark.parametrize("mutate,pattern", [
        (lambda d: d.pop("state_pmf"), "missing field"),
        (lambda d: d["kernel"].pop(), "missing"),
        (lambda d: d["kernel"].append(dict(d["kernel"][0])), "twice"),
        (lambda d: d["kernel"][0].update(x=5), "out of range"),
        (lambda d: d["kernel"][0].update(p=[[1.0]]), "shape"),
        (lambda d: d.update(state_pmf=[1.0]), "length"),
        (lambda d: d.update(cost=[0.0, -1.0]), "non-negative"),
    ])
    def test_validation_messages(self, tmp_path, mutate, pattern):
        doc = identity_doc()
        mutate(doc)
        with pytest.raises(ValidationError, match=pattern):
            smio.parse_channel_file(write(tmp_path, doc))

    def test_stdin(self, monkeypatch):
        import io
        monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(identity_doc())))
        assert smio.parse_channel_file("-").card_x == 2


def test_conditional_round_trip(tmp_path):
    cond = np.random.default_rng(1).dirichlet(np.ones(8), size=2).reshape(2, 2, 1, 2, 2)
    path = tmp_path / "cond.json"
    smio.write_conditional_file(cond, path)
    assert np.array_equal(smio.parse_conditional_file(path), cond)
    with pytest.raises(ValidationError):
        smio.parse_conditional_file(write(tmp_path, {"cond": [[0.5, 0.5]]}, "bad.json"))


class TestFrontierCsv:
    def test_empty(self, tmp_path):
        path = tmp_path / "f.csv"
        smio.emit_frontier_csv(RegionFrontier(points=[]), path)
        assert path.read_text() == "r0,r1,r2,e1,e2,provenance_id\n"

    def test_single_point(self, tmp_path):
        path = tmp_path / "f.csv"
        smio.emit_frontier_csv(RegionFrontier([RateQuintuple(1 / 3, 0, 0, 0.1, -0.0)], [None]), path)
        lines = path.read_text().splitlines()
        assert lines == ["r0,r1,r2,e1,e2,provenance_id", "0.333333333333,0,0,0.1,0,0"]

    def test_sorted_rows(self):
        f = RegionFrontier([RateQuintuple(1, 0, 0, 1, 1), RateQuintuple(0, 1, 0, 1, 1)], [None, None])
        rows = smio.frontier_csv_text(f).splitlines()[1:]
        assert rows == ["0,1,0,1,1,1", "1,0,0,1,1,0"]

    def test_refilter_idempotent(self, tmp_path):
        f = zero_rate_region(random_channel(np.random.default_rng(3)), 16)
        path = tmp_path / "z.csv"
        smio.emit_frontier_csv(f, path)
        back = smio.read_frontier_csv(path)
        again = smio.refilter(back)
        assert smio.frontier_csv_text(again).splitlines()[1:] == \
            [",".join(r.split(",")[:5]) + f",{i}" for i, r in enumerate(path.read_text().splitlines()[1:])]

    def test_bad_header(self, tmp_path):
        with pytest.raises(smio.ParseError):
            smio.read_frontier_csv(write(tmp_path, "a,b\n", "x.csv"))

    def test_bad_row(self, tmp_path):
        with pytest.raises(smio.ParseError, match=":2:"):
            smio.read_frontier_csv(write(tmp_path, "r0,r1,r2,e1,e2,provenance_id\n1,2,x,4,5,0\n", "x.csv"))


def test_provenance_file(tmp_path):
    f = make_frontier([(0, 0, 0, 0, 0)], [np.ones((1, 1, 1, 1, 1))])
    path = tmp_path / "p.json"
    smio.write_provenance(f, path)
    assert json.loads(path.read_text()) == [{"provenance_id": 0, "cond": [[[[[1.0]]]]]}]


def test_gnuplot_text():
    txt = smio.gnuplot_text(("a", "b"), [[1, 0.5], [2, -0.0]])
    assert txt == "# a b\n1 0.5\n2 0\n"


def test_fmt():
    assert smio.fmt(-0.0) == "0" and smio.fmt(1 / 7) == "0.142857142857"

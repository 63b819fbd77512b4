import csv
import io
import json
import subprocess
import sys

import pytest

from spacecode.bench import CSV_HEADER
from spacecode.cli import main, round_numbers

TEN = ["1_", "0_", "11", "10", "01_", "00_", "011", "010", "001", "000"]


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def dist10(tmp_path):
    return write(tmp_path, "d10.json", {"k": 2, "probs": list(range(10, 0, -1))})


@pytest.fixture
def code10(tmp_path):
    return write(tmp_path, "c10.json", {"kind": "space_prefix", "k": 2, "codewords": TEN})


def test_construct_ten(capsys, dist10):
    code, out, err = run_cli(capsys, "construct", dist10)
    assert code == 0
    assert json.loads(out) == {"kind": "space_prefix", "k": 2, "codewords": TEN}
    assert "n=10 k=2" in err and "spaces=4" in err


def test_construct_small(capsys, tmp_path):
    _, out, _ = run_cli(capsys, "construct", write(tmp_path, "u2.json", {"k": 2, "probs": [1, 1]}))
    assert json.loads(out)["codewords"] == ["1", "0"]
    _, out, _ = run_cli(capsys, "construct", write(tmp_path, "u4.csv", "prob\n1\n1\n1\n1\n"))
    assert json.loads(out)["codewords"] == ["1", "0_", "01", "00"]


def test_construct_reports_input_order(capsys, tmp_path):
    path = write(tmp_path, "d.json", {"k": 2, "probs": [0.2, 0.5, 0.3]})
    _, out, _ = run_cli(capsys, "construct", path)
    # symbol 2 is most probable and gets the sorted code's first word
    assert json.loads(out)["codewords"] == ["00", "1", "0_"]


def test_construct_drop_zeros(capsys, tmp_path):
    path = write(tmp_path, "z.json", {"k": 2, "probs": [1, 0, 1]})
    code, _, err = run_cli(capsys, "construct", path)
    assert code == 2 and "zero-probability" in err
    code, out, _ = run_cli(capsys, "construct", path, "--drop-zeros")
    assert code == 0
    doc = json.loads(out)
    assert doc["symbols"] == [1, 3] and doc["codewords"] == ["1", "0"]


def test_construct_one_to_one(capsys, tmp_path, dist10):
    _, out, _ = run_cli(capsys, "construct", dist10, "--one-to-one", "--epsilon")
    doc = json.loads(out)
    assert doc["kind"] == "one_to_one_eps" and doc["codewords"][0] == ""
    code, _, _ = run_cli(capsys, "construct", dist10, "--epsilon")
    assert code == 2


def test_construct_to_file(capsys, tmp_path, dist10):
    target = tmp_path / "out.json"
    code, out, _ = run_cli(capsys, "construct", dist10, "-o", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["codewords"] == TEN


def test_encode_decode(capsys, tmp_path, code10):
    msg = write(tmp_path, "m.txt", "1 3\n")
    code, out, _ = run_cli(capsys, "encode", code10, msg)
    assert (code, out) == (0, "1_11")
    stream = write(tmp_path, "s.txt", "1_11")
    code, out, _ = run_cli(capsys, "decode", code10, stream)
    assert (code, out) == (0, "1\n3\n")
    empty = write(tmp_path, "e.txt", "")
    assert run_cli(capsys, "encode", code10, empty)[:2] == (0, "")
    assert run_cli(capsys, "decode", code10, empty)[:2] == (0, "")


def test_exit_codes(capsys, tmp_path, code10, dist10):
    bad_stream = write(tmp_path, "bad.txt", "11_")
    code, _, err = run_cli(capsys, "decode", code10, bad_stream)
    assert code == 3 and "offset 2" in err
    assert run_cli(capsys, "encode", code10, write(tmp_path, "m1", "11"))[0] == 2
    assert run_cli(capsys, "encode", code10, write(tmp_path, "m2", "a"))[0] == 2
    assert run_cli(capsys, "construct", str(tmp_path / "missing.json"))[0] == 2
    assert run_cli(capsys, "construct", write(tmp_path, "x.json", "{oops"))[0] == 2
    assert run_cli(capsys, "construct", dist10, "--k", "1")[0] == 2
    not_prefix = write(tmp_path, "np.json", {"kind": "space_prefix", "k": 2, "codewords": ["1", "10"]})
    assert run_cli(capsys, "decode", not_prefix, bad_stream)[0] == 2
    assert run_cli(capsys, "decode", write(tmp_path, "cb", "[1"), bad_stream)[0] == 2
    assert run_cli(capsys, "oracle", dist10, "--budget", "5")[0] == 4
    assert run_cli(capsys, "bench", "--family", "zipf", "--n", "0")[0] == 2


def test_bounds_json_and_csv(capsys, tmp_path):
    path = write(tmp_path, "u4.json", {"k": 2, "probs": [1, 1, 1, 1]})
    code, out, _ = run_cli(capsys, "bounds", path)
    doc = json.loads(out)
    assert code == 0 and doc["eps_gap_disagrees"] is True
    values = {r["formula_id"]: r["value"] for r in doc["records"]}
    assert values["lb_space"] == 1.75 and values["eps_gap_printed"] == 0.25
    _, out, _ = run_cli(capsys, "bounds", path, "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert {r["formula_id"]: r["value"] for r in rows}["remark_gap"] == "1.73814049286"


def test_oracle(capsys, tmp_path):
    path = write(tmp_path, "d.json", {"k": 2, "probs": [0.5, 0.3, 0.2]})
    code, out, _ = run_cli(capsys, "oracle", path, "--max-len", "4")
    doc = json.loads(out)
    assert code == 0
    assert doc["metadata"]["optimal_length"] == 1.5
    assert doc["metadata"]["max_len"] == 4
    assert doc["codebook"]["kind"] == "space_prefix"


def test_bench(capsys, tmp_path):
    argv = ["bench", "--family", "zipf", "--n", "7", "--k", "3", "--trials", "2", "--jitter", "0.4", "--seed", "5"]
    code, out, _ = run_cli(capsys, *argv)
    assert code == 0
    assert out.splitlines()[0] == ",".join(CSV_HEADER)
    assert run_cli(capsys, *argv)[1] == out
    _, js, _ = run_cli(capsys, *argv, "--format", "json")
    assert len(json.loads(js)) == 2
    dist = write(tmp_path, "d.json", {"k": 2, "probs": [3, 2, 1]})
    code, out, _ = run_cli(capsys, "bench", "--dist-file", dist)
    assert code == 0 and out.splitlines()[1].startswith("0,custom-file,")


def test_round_numbers():
    assert round_numbers({"a": [0.1 + 0.2, 1], "b": 2 / 3}) == {"a": [0.3, 1], "b": 0.666666666666667}


def test_pipeline_round_trip(tmp_path, dist10):
    exe = [sys.executable, "-m", "spacecode.cli"]
    codebook = tmp_path / "code.json"
    subprocess.run(exe + ["construct", dist10, "-o", str(codebook)], check=True, capture_output=True)
    message = "3 1 10 2 7 7 4"
    enc = subprocess.run(exe + ["encode", str(codebook)], input=message, capture_output=True, text=True, check=True)
    dec = subprocess.run(exe + ["decode", str(codebook)], input=enc.stdout, capture_output=True, text=True, check=True)
    assert dec.stdout.split() == message.split()
    bad = subprocess.run(exe + ["decode", str(codebook)], input="11_", capture_output=True, text=True)
    assert bad.returncode == 3

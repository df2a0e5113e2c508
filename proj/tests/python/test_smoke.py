"""End-to-end smoke tests for the python extension and the CLI binary."""
import json
import os
import subprocess

import pytest

import polyszem as pz


def family(entries, ell=1):
    m = len(entries[0])
    return json.dumps({"ell": ell, "m": m, "entries": entries})


QUADRATIC = family([[[[0], [0], [1]]]])  # the one-tuple family (n^2)
LINEAR = family([[[[0], [1]]]])          # the one-tuple family (n)


def test_version():
    assert pz.__version__ == "0.1.0"


def test_pet_reduce_quadratic():
    trace = json.loads(pz.pet_reduce(QUADRATIC, 2))
    assert trace["degree_d"] == 2
    assert trace["gowers_degree"] == 3
    assert trace["initial_type"] == [[1, 0]]


def test_family_type_and_vdc():
    assert json.loads(pz.family_type(QUADRATIC, 2)) == [[1, 0]]
    image = json.loads(pz.vdc_operation(QUADRATIC, 0))
    assert image["m"] == 2


def test_gowers_norms():
    assert pz.gowers_norm([0j] * 8, 8, 2) == 0.0
    ones = [1 + 0j] * 16
    assert abs(pz.gowers_norm(ones, 16, 2) - 1.0) < 1e-9
    rnd = [complex((n * 7 % 5) - 2, (n * 3 % 4) - 1) for n in range(16)]
    assert abs(pz.gowers_norm(rnd, 16, 2) - pz.brute_gowers(rnd, 16, 2)) < 1e-9


def test_embed_and_vdc_inequality():
    values, modulus = pz.embed([5 + 0j, 7 + 0j], 3)
    assert modulus == 6
    assert values == [5 + 0j, 7 + 0j, 0j, 0j, 0j, 0j]
    lhs, rhs, constant = pz.vdc_inequality([[1 + 0j]] * 64)
    assert constant == 4.0
    assert lhs <= constant * rhs


def test_prime_tables():
    t = pz.build_table(1000, 5)
    assert (t.W, t.phi_W) == (6, 2)
    assert t.coprime_residues == [1, 5]
    assert t.mangoldt_prime(8) == 0.0
    assert abs(pz.lambda_w_r(t, 1, 1) - t.mangoldt_prime(7) / 3.0) < 1e-12
    diff = pz.compare_prime_average(t, lambda n: 1.0, 1000)
    assert abs(diff - 0.0437547348799411) < 1e-9


def test_cost_guard_raises():
    with pytest.raises(pz.CostGuardError):
        pz.brute_gowers([1 + 0j] * 512, 512, 3)


def test_dynamics_roundtrip():
    sys32 = pz.FiniteSystem.cyclic_rotation(32)
    A = pz.EventSet.first_half(32)
    assert abs(pz.recurrence_average(sys32, A, LINEAR, [], 512) - 0.25) < 1e-12
    t = pz.build_table(6 * 501 + 6, 5)
    per_r, max_norm = pz.prop_key_experiment(
        sys32, [pz.Observable.ones(32)], QUADRATIC, t, 500)
    for r, norm in per_r:
        assert abs(norm - pz.weight_discrepancy(t, r, 500)) < 1e-12
    assert max_norm == max(norm for _, norm in per_r)


def test_patterns():
    E = pz.WindowedSet.random([(1, 4096)], 0.3, 1)
    spec = pz.PatternSpec.parse("n^2", 1)
    assert abs(pz.intersection_density(E, spec, 0) - E.density()) < 1e-15
    comb, dyn, eps, ok = pz.correspondence_check(E, spec, 6)
    assert ok
    assert comb >= dyn - eps
    hits, skipped = pz.shifted_prime_search(
        E, pz.PatternSpec.parse("n", 1), pz.build_table(300, 3), -1, 0.01)
    assert skipped == 0
    assert len(hits) > 0


CLI = os.environ.get("POLYSZEM_CLI")
needs_cli = pytest.mark.skipif(
    CLI is None or not os.path.exists(CLI), reason="CLI binary not available")


def run_cli(*args, env=None):
    full_env = dict(os.environ)
    if env:
        full_env.update(env)
    return subprocess.run([CLI, *args], capture_output=True, text=True, env=full_env)


@needs_cli
def test_cli_pet_report(tmp_path):
    fam = tmp_path / "fam.json"
    fam.write_text(QUADRATIC)
    proc = run_cli("pet", "--family", str(fam), "--s", "2")
    assert proc.returncode == 0
    report = json.loads(proc.stdout)
    assert report["command"] == "pet"
    assert report["payload"]["degree_d"] == 2
    assert report["payload"]["gowers_degree"] == 3


@needs_cli
def test_cli_determinism(tmp_path):
    seq = tmp_path / "seq.json"
    seq.write_text(json.dumps({
        "values": [[(n % 3) - 1, 0.5 * (n % 2)] for n in range(12)],
        "modulus": 12,
    }))
    outputs = []
    for _ in range(2):
        proc = run_cli("gowers", "--seq", str(seq), "--d", "2")
        assert proc.returncode == 0
        report = json.loads(proc.stdout)
        report["meta"]["wall_time_ms"] = 0
        outputs.append(json.dumps(report, sort_keys=False))
    assert outputs[0] == outputs[1]


@needs_cli
def test_cli_exit_codes(tmp_path):
    assert run_cli("no-such-subcommand").returncode == 2
    assert run_cli("pet", "--family", "/nonexistent.json").returncode == 2
    big = tmp_path / "big.json"
    big.write_text(json.dumps({"values": [[1, 0]] * 512, "modulus": 512}))
    assert run_cli("gowers", "--seq", str(big), "--d", "3",
                   "--mode", "brute").returncode == 3


@needs_cli
def test_cli_out_dir(tmp_path):
    fam = tmp_path / "fam.json"
    fam.write_text(LINEAR)
    proc = run_cli("pet", "--family", str(fam), "--out", "report.json",
                   env={"POLYSZEM_OUT_DIR": str(tmp_path)})
    assert proc.returncode == 0
    report = json.loads((tmp_path / "report.json").read_text())
    assert report["payload"]["degree_d"] == 1

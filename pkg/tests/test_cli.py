import numpy as np

from curvemedian import (
    CurvePanel,
    ShiftConfig,
    generate_shift_sample,
    read_cloud,
    read_curve,
    read_json,
    read_matrix,
    read_panel,
    sim1_truth,
    write_cloud,
    write_json,
    write_panel,
)
from curvemedian.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def labeled_two_class_panel():
    a = generate_shift_sample(ShiftConfig(target="tsin", n=4, shifts=[-0.5, 0.0, 0.5, 1.0]))
    b = generate_shift_sample(ShiftConfig(target="gaussian_bump", n=4, shifts=[-0.5, 0.0, 0.5, 1.0]))
    return CurvePanel(a.grid, np.vstack([a.values, b.values]), labels=["a"] * 4 + ["b"] * 4)


# ---------------------------------------------------------------- simulate

def test_simulate_sim2_writes_panel_and_truth(tmp_path, capsys):
    code, out, _ = run(
        capsys, "simulate", "--model", "sim2", "--n", "9", "--seed", "7",
        "--out", str(tmp_path / "warp"),
    )
    assert code == 0
    assert "model: sim2" in out and "seed: 7" in out
    panel = read_panel(tmp_path / "warp.csv")
    assert panel.n == 9 and panel.m == 100
    truth = (tmp_path / "warp.truth.csv").read_text().splitlines()
    assert truth[0] == "index,amplitude,scale,shift"
    assert len(truth) == 10


def test_simulate_sim1_noiseless_is_exact_parabola(tmp_path, capsys):
    code, _, _ = run(
        capsys, "simulate", "--model", "sim1", "--n", "30", "--noiseless",
        "--out", str(tmp_path / "par"),
    )
    assert code == 0
    assert np.array_equal(read_cloud(tmp_path / "par.csv"), sim1_truth(30))
    assert np.array_equal(read_cloud(tmp_path / "par.truth.csv"), sim1_truth(30))


def test_simulate_shift_truth_holds_shifts(tmp_path, capsys):
    code, _, _ = run(
        capsys, "simulate", "--model", "shift", "--n", "5", "--seed", "3",
        "--out", str(tmp_path / "s"),
    )
    assert code == 0
    panel = read_panel(tmp_path / "s.csv")
    assert panel.n == 5
    lines = (tmp_path / "s.truth.csv").read_text().splitlines()
    assert lines[0] == "index,shift" and len(lines) == 6


def test_simulate_repeats_are_byte_identical(tmp_path, capsys):
    for name in ("one", "two"):
        run(
            capsys, "simulate", "--model", "sim2", "--n", "6", "--seed", "11",
            "--out", str(tmp_path / name),
        )
    assert (tmp_path / "one.csv").read_bytes() == (tmp_path / "two.csv").read_bytes()
    assert (tmp_path / "one.truth.csv").read_bytes() == (tmp_path / "two.truth.csv").read_bytes()


# --------------------------------------------------------------- distances

def test_distances_collinear_cloud(tmp_path, capsys):
    src = tmp_path / "pts.csv"
    write_cloud(src, np.array([[0.0], [1.0], [3.0]]))
    code, out, _ = run(
        capsys, "distances", "--input", str(src), "--outdir", str(tmp_path / "d"),
    )
    assert code == 0
    assert "n=3" in out
    dm = read_matrix(tmp_path / "d" / "distances.csv")
    assert dm.tolist() == [[0.0, 1.0, 3.0], [1.0, 0.0, 2.0], [3.0, 2.0, 0.0]]
    emst = (tmp_path / "d" / "graph.emst.csv").read_text().splitlines()
    assert emst == ["i,j,weight", "0,1,1", "1,2,2"]
    graph = (tmp_path / "d" / "graph.csv").read_text().splitlines()
    assert graph == ["i,j,weight", "0,1,1", "0,2,3", "1,2,2"]


def test_distances_single_point(tmp_path, capsys):
    src = tmp_path / "pt.csv"
    write_cloud(src, np.array([[2.0, 2.0]]))
    code, _, _ = run(capsys, "distances", "--input", str(src), "--outdir", str(tmp_path / "d"))
    assert code == 0
    assert read_matrix(tmp_path / "d" / "distances.csv").tolist() == [[0.0]]


def test_distances_accepts_panel_input(tmp_path, capsys):
    src = tmp_path / "panel.csv"
    write_panel(src, generate_shift_sample(ShiftConfig(n=6, seed=1)))
    code, _, _ = run(capsys, "distances", "--input", str(src), "--outdir", str(tmp_path / "d"))
    assert code == 0
    dm = read_matrix(tmp_path / "d" / "distances.csv")
    assert dm.shape == (6, 6)
    diag = read_json(tmp_path / "d" / "diagnostics.json")
    assert diag["n"] == 6
    assert diag["tree_edges"] == 5
    assert diag["tree_edges"] <= diag["graph_edges"] <= diag["complete_edges"]
    assert 0.0 < diag["max_radius_over_diameter"] <= 2.0


def test_distances_threads_do_not_change_output(tmp_path, capsys, monkeypatch):
    src = tmp_path / "panel.csv"
    write_panel(src, generate_shift_sample(ShiftConfig(n=12, seed=5)))
    run(capsys, "distances", "--input", str(src), "--outdir", str(tmp_path / "one"))
    monkeypatch.setenv("CURVEMEDIAN_THREADS", "4")
    run(capsys, "distances", "--input", str(src), "--outdir", str(tmp_path / "four"))
    assert (tmp_path / "one" / "distances.csv").read_bytes() == (
        tmp_path / "four" / "distances.csv"
    ).read_bytes()


def test_bad_thread_count_is_usage_error(tmp_path, capsys, monkeypatch):
    src = tmp_path / "pts.csv"
    write_cloud(src, np.zeros((2, 2)))
    monkeypatch.setenv("CURVEMEDIAN_THREADS", "zero")
    code, _, err = run(capsys, "distances", "--input", str(src), "--outdir", str(tmp_path / "d"))
    assert code == 2
    assert "CURVEMEDIAN_THREADS" in err


# ---------------------------------------------------------------- template

def test_template_single_curve(tmp_path, capsys):
    src = tmp_path / "panel.csv"
    write_panel(src, generate_shift_sample(ShiftConfig(shifts=[0.3])))
    code, out, _ = run(capsys, "template", "--input", str(src), "--outdir", str(tmp_path / "t"))
    assert code == 0
    assert "template index: 0" in out
    est = read_json(tmp_path / "t" / "estimate.json")
    assert est == {"index": 0, "objective": 0.0, "alpha": 1.0}


def test_template_picks_middle_shift(tmp_path, capsys):
    src = tmp_path / "panel.csv"
    panel = generate_shift_sample(ShiftConfig(shifts=[0.0, 0.1, 0.9]))
    write_panel(src, panel)
    code, out, _ = run(capsys, "template", "--input", str(src), "--outdir", str(tmp_path / "t"))
    assert code == 0
    assert "template index: 1" in out
    grid, values = read_curve(tmp_path / "t" / "template.csv")
    assert np.array_equal(grid, panel.grid)
    assert np.array_equal(values, panel.values[1])
    plot = read_json(tmp_path / "t" / "plotdata.json")
    assert plot["template_index"] == 1
    assert len(plot["curves"]) == 3
    assert plot["template"] == plot["curves"][1]


# ---------------------------------------------------------------- classify

def test_classify_knn_perfect_on_training_panel(tmp_path, capsys):
    panel = labeled_two_class_panel()
    train = tmp_path / "train.csv"
    write_panel(train, panel)
    code, out, _ = run(
        capsys, "classify", "--train", str(train), "--test", str(train),
        "--method", "knn", "--k", "1", "--outdir", str(tmp_path / "c"),
    )
    assert code == 0
    assert "accuracy: 1" in out
    lines = (tmp_path / "c" / "confusion.csv").read_text().splitlines()
    assert lines == ["reference\\predicted,a,b", "a,4,0", "b,0,4"]
    assert not (tmp_path / "c" / "templates.csv").exists()
    preds = (tmp_path / "c" / "predictions.csv").read_text().splitlines()
    assert preds[0] == "index,reference,predicted" and len(preds) == 9


def test_classify_manifold_writes_templates(tmp_path, capsys):
    panel = labeled_two_class_panel()
    train = tmp_path / "train.csv"
    write_panel(train, panel)
    code, _, _ = run(
        capsys, "classify", "--train", str(train), "--test", str(train),
        "--method", "manifold", "--outdir", str(tmp_path / "c"),
    )
    assert code == 0
    templates = read_panel(tmp_path / "c" / "templates.csv")
    assert templates.labels == ["a", "b"]
    saved = read_json(tmp_path / "c" / "classifier.json")
    assert saved["method"] == "manifold"


def test_classify_flags_override_config_file(tmp_path, capsys):
    panel = labeled_two_class_panel()
    train = tmp_path / "train.csv"
    write_panel(train, panel)
    cfg = tmp_path / "cfg.json"
    write_json(cfg, {"method": "mean", "k": 2})
    code, out, _ = run(
        capsys, "classify", "--train", str(train), "--test", str(train),
        "--config", str(cfg), "--method", "knn", "--outdir", str(tmp_path / "c"),
    )
    assert code == 0
    assert "method: knn" in out
    assert read_json(tmp_path / "c" / "classifier.json")["k"] == 2


# -------------------------------------------------------------- exit codes

def test_unknown_subcommand_exits_2(tmp_path, capsys):
    code, _, _ = run(capsys, "frobnicate")
    assert code == 2


def test_missing_required_argument_exits_2(capsys):
    code, _, _ = run(capsys, "simulate", "--model", "sim1")
    assert code == 2


def test_ragged_input_exits_3(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("t,0.0,1.0\nrow,1.0\n")
    code, _, err = run(capsys, "distances", "--input", str(bad), "--outdir", str(tmp_path / "d"))
    assert code == 3
    assert "error:" in err


def test_missing_input_exits_3(tmp_path, capsys):
    code, _, _ = run(
        capsys, "distances", "--input", str(tmp_path / "nope.csv"), "--outdir", str(tmp_path / "d")
    )
    assert code == 3


def test_bad_alpha_exits_2(tmp_path, capsys):
    src = tmp_path / "panel.csv"
    write_panel(src, generate_shift_sample(ShiftConfig(shifts=[0.0, 1.0])))
    code, _, _ = run(
        capsys, "template", "--input", str(src), "--alpha", "-1",
        "--outdir", str(tmp_path / "t"),
    )
    assert code == 2


def test_unlabeled_test_panel_exits_2(tmp_path, capsys):
    panel = labeled_two_class_panel()
    train = tmp_path / "train.csv"
    write_panel(train, panel)
    bare = tmp_path / "bare.csv"
    write_panel(bare, CurvePanel(panel.grid, panel.values))
    code, _, _ = run(
        capsys, "classify", "--train", str(train), "--test", str(bare),
        "--method", "mean", "--outdir", str(tmp_path / "c"),
    )
    assert code == 2

"""End-to-end acceptance suite.

One test per acceptance criterion; each prints a single PASS line when it
holds (pytest -v or -s shows them). Every numeric check is made against an
independently coded oracle, never against the implementation under test.
"""

import json
import random
import time
from pathlib import Path

import numpy as np
import pytest

import sample_plugin
from conftest import random_session_state, states_equivalent
from linkplot.analytics import Polygon, kmeans, lasso_select, pca2
from linkplot.engine import events as ev
from linkplot.engine.core import dispatch, empty_state
from linkplot.engine.protocol import Engine
from linkplot.engine.registry import DuplicateKind, Registry, register_plugin
from linkplot.plots import PlotConfig
from linkplot.session import load_session, save_session
from linkplot.smiles import SmilesError, depict_svg, layout2d, parse_smiles

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = json.loads((FIXTURES / "smiles_golden.json").read_text())


# --- 1: PCA against an independent SVD oracle -------------------------------

def test_pca_matches_independent_oracle():
    rng = np.random.default_rng(11)
    started = time.monotonic()
    for _ in range(50):
        n = int(rng.integers(2, 201))
        d = int(rng.integers(2, 11))
        data = rng.normal(scale=rng.uniform(0.1, 50.0), size=(n, d))
        result = pca2(data)

        # oracle: SVD of the centered matrix, a different decomposition path
        centered = data - data.mean(axis=0)
        _, sing, vt = np.linalg.svd(centered, full_matrices=False)
        oracle_var = sing[:2] ** 2 / (n - 1)
        got_var = np.array(result.explained_variance)
        m = min(2, len(oracle_var))
        assert np.allclose(got_var[:m], oracle_var[:m], atol=1e-8)

        for i in range(m):
            a, b = result.components[i], vt[i]
            assert (
                np.allclose(a, b, atol=1e-8)
                or np.allclose(a, -b, atol=1e-8)
            )
        # projection consistency: coords are exactly centered @ components.T
        assert np.allclose(
            result.coords, centered @ result.components.T, atol=1e-8
        )
    elapsed = time.monotonic() - started
    assert elapsed < 10.0
    print(
        f"PASS pca-oracle: 50 random matrices within 1e-8 of SVD oracle "
        f"({elapsed:.2f}s)"
    )


# --- 2: k-means behavioural properties --------------------------------------

def test_kmeans_properties():
    rng = np.random.default_rng(23)

    # inertia never increases between Lloyd iterations
    for trial in range(100):
        n = int(rng.integers(3, 80))
        d = int(rng.integers(1, 6))
        k = int(rng.integers(1, min(n, 8) + 1))
        data = rng.normal(size=(n, d)) * rng.uniform(0.5, 20.0)
        result = kmeans(data, k, seed=trial)
        hist = result.inertia_history
        assert all(
            b <= a + 1e-9 * max(1.0, abs(a))
            for a, b in zip(hist, hist[1:])
        )

    # two well-separated blobs are recovered with purity 1.0
    blob_a = rng.normal(loc=0.0, scale=0.5, size=(40, 2))
    blob_b = rng.normal(loc=50.0, scale=0.5, size=(40, 2))
    data = np.vstack([blob_a, blob_b])
    result = kmeans(data, 2, seed=7)
    first, second = set(result.assignments[:40]), set(result.assignments[40:])
    assert len(first) == 1 and len(second) == 1 and first != second

    # fixed point: every point already sits with its nearest centroid
    d2 = (
        (data[:, None, :] - result.centroids[None, :, :]) ** 2
    ).sum(axis=2)
    assert (d2.argmin(axis=1) == np.array(result.assignments)).all()

    # seed determinism
    again = kmeans(data, 2, seed=7)
    assert again.assignments == result.assignments
    assert np.array_equal(again.centroids, result.centroids)
    assert again.inertia == result.inertia
    print(
        "PASS kmeans: inertia monotone on 100 instances, two-blob purity "
        "1.0, fixed point, seed-deterministic"
    )


# --- 3: lasso against a brute-force oracle ----------------------------------

def _oracle_inside(x, y, verts):
    """Independent crossing-number test with explicit boundary handling."""
    n = len(verts)
    for i in range(n):
        x1, y1 = verts[i]
        x2, y2 = verts[(i + 1) % n]
        cross = (x2 - x1) * (y - y1) - (y2 - y1) * (x - x1)
        if (
            cross == 0.0
            and min(x1, x2) <= x <= max(x1, x2)
            and min(y1, y2) <= y <= max(y1, y2)
        ):
            return True
    crossings = 0
    for i in range(n):
        x1, y1 = verts[i]
        x2, y2 = verts[(i + 1) % n]
        if (y1 <= y < y2) or (y2 <= y < y1):
            t = (y - y1) / (y2 - y1)
            if x < x1 + t * (x2 - x1):
                crossings += 1
    return crossings % 2 == 1


def _random_simple_polygon(rng):
    # star-shaped construction: sorted angles around a center never self-cross
    m = rng.randint(3, 12)
    cx, cy = rng.uniform(-5, 5), rng.uniform(-5, 5)
    angles = sorted(rng.uniform(0, 2 * np.pi) for _ in range(m))
    return Polygon(vertices=tuple(
        (cx + rng.uniform(0.5, 6.0) * np.cos(a),
         cy + rng.uniform(0.5, 6.0) * np.sin(a))
        for a in angles
    ))


def test_lasso_matches_bruteforce_oracle():
    rng = random.Random(301)
    for _ in range(50):
        poly = _random_simple_polygon(rng)
        points = np.array([
            [rng.uniform(-12, 12), rng.uniform(-12, 12)] for _ in range(500)
        ])
        row_ids = list(range(500))
        got = lasso_select(points, row_ids, poly)
        expected = {
            rid for rid, (x, y) in zip(row_ids, points)
            if _oracle_inside(x, y, poly.vertices)
        }
        assert got == expected
    print("PASS lasso-oracle: 50 polygons x 500 points, exact agreement")


# --- 4: molecule-string corpus and fuzzing ----------------------------------

def test_molecule_corpus_and_fuzz():
    for entry in GOLDEN["molecules"]:
        mol = parse_smiles(entry["smiles"])
        assert len(mol.atoms) == entry["atoms"], entry["smiles"]
        assert len(mol.bonds) == entry["bonds"], entry["smiles"]
        implicit = [a.implicit_h for a in mol.atoms]
        assert implicit == entry["implicit_h"], entry["smiles"]
        total = sum(a.implicit_h + (a.explicit_h or 0) for a in mol.atoms)
        assert total == entry["total_h"], entry["smiles"]
    assert len(GOLDEN["molecules"]) == 25

    import linkplot.smiles as sm
    for entry in GOLDEN["invalid"]:
        err = getattr(sm, entry["error"])
        with pytest.raises(err):
            parse_smiles(entry["smiles"])
        try:
            parse_smiles(entry["smiles"])
        except SmilesError as caught:
            assert 0 <= caught.position <= len(entry["smiles"])
    assert len(GOLDEN["invalid"]) == 10

    rng = random.Random(99)
    crashes = 0
    for _ in range(100_000):
        length = rng.randrange(0, 30)
        s = bytes(rng.randrange(256) for _ in range(length)).decode(
            "latin-1"
        )
        try:
            parse_smiles(s)
        except SmilesError:
            pass
        except Exception:
            crashes += 1
    assert crashes == 0
    print(
        "PASS molecule-corpus: 25 golden molecules exact, 10 invalid "
        "strings typed, 100000 fuzz inputs with zero crashes"
    )


# --- 5: 2D layout sanity ----------------------------------------------------

def test_layout_sanity():
    mol = parse_smiles("C1CCCCC1")
    layout = layout2d(mol)
    coords = np.asarray(layout.coords)
    sides = sorted(
        float(np.linalg.norm(coords[i] - coords[(i + 1) % 6]))
        for i in range(6)
    )
    side = float(np.median(sides))
    assert side > 0
    for s in sides:
        assert abs(s - side) / side <= 0.05

    for entry in GOLDEN["molecules"]:
        m = parse_smiles(entry["smiles"])
        pts = np.asarray(layout2d(m).coords)
        assert np.isfinite(pts).all()
        if len(pts) > 1:
            diffs = pts[:, None, :] - pts[None, :, :]
            dist = np.sqrt((diffs ** 2).sum(axis=2))
            np.fill_diagonal(dist, np.inf)
            assert dist.min() >= 0.5, entry["smiles"]
        svg = depict_svg(m, layout2d(m))
        assert svg.startswith("<svg") or "<svg" in svg
    print(
        "PASS layout: cyclohexane hexagonal within 5%, all corpus layouts "
        "finite with min distance >= 0.5"
    )


# --- 6: session round-trip --------------------------------------------------

def test_session_roundtrip_acceptance():
    rng = random.Random(2026)
    for _ in range(200):
        s = random_session_state(rng)
        blob = save_session(s)
        assert save_session(s) == blob
        loaded = load_session(blob)
        assert states_equivalent(loaded, s)
        assert save_session(loaded) == blob

    golden = (FIXTURES / "golden.xsession.json").read_bytes()
    state = load_session(golden)
    assert save_session(state) == golden
    print(
        "PASS session: 200 randomized round-trips equivalent, saves "
        "byte-deterministic, golden fixture byte-stable"
    )


# --- 7: linked-hover workflow over the message protocol ---------------------

_WORKFLOW_SMILES = [
    e["smiles"] for e in GOLDEN["molecules"] if "%" not in e["smiles"]
]


def _workflow_csv(rows=50):
    rng = random.Random(4)
    lines = ["smiles,emb_x,emb_y"]
    for i in range(rows):
        s = _WORKFLOW_SMILES[i % len(_WORKFLOW_SMILES)]
        # two visible blobs so k=2 has structure to find
        base = 0.0 if i % 2 == 0 else 30.0
        lines.append(
            f"{s},{base + rng.uniform(-1, 1):.4f},"
            f"{base + rng.uniform(-1, 1):.4f}"
        )
    return "\n".join(lines) + "\n"


def test_linked_hover_workflow():
    engine = Engine()

    def send(event):
        response = engine.handle({"kind": "event", "event": event})
        assert response["kind"] == "updates", response
        for u in response["updates"]:
            assert u["type"] != "state_error", u
        return response["updates"]

    send({"type": "load_data", "data": _workflow_csv()})
    send({"type": "add_plot",
          "config": {"kind": "scatter",
                     "options": {"x_column": "emb_x",
                                 "y_column": "emb_y"}}})
    send({"type": "add_plot",
          "config": {"kind": "histogram", "options": {"column": "emb_x"}}})
    send({"type": "add_plot",
          "config": {"kind": "smiles",
                     "options": {"smiles_column": "smiles"}}})
    send({"type": "run_kmeans", "column_names": ["emb_x", "emb_y"], "k": 2,
          "seed": 12})
    transcript = send({"type": "hover_point", "row_id": 7})

    smiles_specs = [
        u["spec"] for u in transcript
        if u["type"] == "plot_spec_changed" and u["spec"]["kind"] == "smiles"
    ]
    assert smiles_specs, "hover produced no molecule panel update"
    spec = smiles_specs[0]
    assert spec["series"]["smiles"] == _WORKFLOW_SMILES[
        7 % len(_WORKFLOW_SMILES)
    ]
    assert "<svg" in spec["series"]["svg"]

    scatter = engine.handle({"kind": "get_plot_spec", "plot_id": "p1"})
    colors = scatter["spec"]["series"]["color_index"]
    distinct = {c for c in colors if c is not None}
    assert len(distinct) == 2
    legend = scatter["spec"]["encodings"]["color_legend"]
    palette = scatter["spec"]["encodings"]["palette"]
    hexes = {palette[idx % len(palette)] for idx in legend.values()}
    assert len(hexes) == len(legend) == 2
    print(
        "PASS linked-hover: 50-row scripted protocol session, hover yields "
        "molecule SVG, 2 distinct cluster colors, headless"
    )


# --- 8: plugin parity with built-ins ----------------------------------------

def test_plugin_integration():
    registry = register_plugin(Registry(), sample_plugin.MANIFEST)
    assert "violin" in registry.list_plot_kinds()

    state, _ = dispatch(
        empty_state(), ev.LoadData(raw=b"v\n1\n2\n3\n"), registry=registry
    )
    state, updates = dispatch(
        state, ev.AddPlot(PlotConfig("violin", {"column": "v"})),
        registry=registry,
    )
    assert isinstance(updates[0], ev.PlotSpecChanged)
    assert updates[0].spec.kind == "violin"

    # plugin kinds receive linked-interaction updates exactly like built-ins
    state, _ = dispatch(
        state,
        ev.AddPlot(PlotConfig("table", {})),
        registry=registry,
    )
    _, updates = dispatch(
        state, ev.SelectionSet(frozenset({0, 2})), registry=registry
    )
    respecced = {
        u.spec.kind for u in updates if isinstance(u, ev.PlotSpecChanged)
    }
    assert "violin" in respecced and "table" in respecced
    violin = next(
        u.spec for u in updates
        if isinstance(u, ev.PlotSpecChanged) and u.spec.kind == "violin"
    )
    assert violin.series["selected_count"] == 2

    with pytest.raises(DuplicateKind):
        register_plugin(registry, sample_plugin.MANIFEST)
    print(
        "PASS plugin: sample kind registers, instantiates, joins dispatch "
        "like built-ins, duplicate registration rejected"
    )

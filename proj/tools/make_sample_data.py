#!/usr/bin/env python3
"""Regenerates data/sample/: a small synthetic campaign for two sUAS.

Deterministic; rerun after changing it and refresh tests/golden/ with
tests/update_golden.sh.
"""

import csv
import json
import math
import random
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "data" / "sample"
TELEM = OUT / "telemetry"

rng = random.Random(20240517)


def fmt(v):
    s = f"{v:.4f}".rstrip("0").rstrip(".")
    return "0" if s in ("", "-0") else s


def write_csv(path, header, rows):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([fmt(x) if isinstance(x, float) else x for x in r])


def write_json(path, obj):
    path.write_text(json.dumps(obj, indent=2) + "\n")


# ---------------------------------------------------------------------------
# telemetry

def wall_following(name, offset, amp, phase):
    rows = []
    for i in range(101):
        t = i * 0.1
        rows.append((t, t, offset + amp * math.sin(0.9 * t + phase), 1.0 + 0.02 * math.sin(1.7 * t)))
    write_csv(TELEM / name, ["t", "x", "y", "z"], rows)


def oa_flight(name, stop_distance, decel, collided):
    # approach the wall plane at x = 5 at 1 m/s, 20 Hz
    v0, dt, wall = 1.0, 0.05, 5.0
    rows, t, x, v = [], 0.0, 0.0, v0
    brake_at = wall - stop_distance - v0 * v0 / (2 * decel)
    while t < 8.0:
        rows.append((t, x, 0.0, 1.2))
        if collided:
            if x >= wall - 0.15:
                x, v = wall - 0.15, 0.0
            else:
                x += v * dt
        elif v > 0 and x >= brake_at:
            nv = max(0.0, v - decel * dt)
            x += 0.5 * (v + nv) * dt
            v = nv
        else:
            x += v * dt
        t = round(t + dt, 10)
    write_csv(TELEM / name, ["t", "x", "y", "z"], rows)


def cr_flight(name, t_c, v_in, v_out):
    rows = []
    dt = 0.05
    x = 5.0 - v_in * t_c
    for i in range(int(4.0 / dt) + 1):
        t = i * dt
        v = v_in if t <= t_c + 1e-9 else -v_out
        rows.append((t, x, 0.0, 1.0, v, 0.0, 0.0))
        x += v * dt
    write_csv(TELEM / name, ["t", "x", "y", "z", "vx", "vy", "vz"], rows)


# ---------------------------------------------------------------------------

def main():
    OUT.mkdir(parents=True, exist_ok=True)
    trials = []

    def trial(tid, test, suas, outcome="success", **kw):
        d = {"trial_id": tid, "test_id": test, "suas_id": suas, "outcome": outcome,
             "collisions": kw.pop("collisions", 0), "rollovers": kw.pop("rollovers", 0)}
        d.update(kw)
        trials.append(d)

    for suas, base in (("A", 0.12), ("B", 0.25)):
        for k in range(3):
            name = f"wf_{suas}{k + 1}.csv"
            wall_following(name, base + 0.02 * k, 0.05 + 0.01 * k, 0.4 * k)
            trial(f"WF-{suas}{k + 1}", "wall-following", suas, telemetry=f"telemetry/{name}", duration_min=0.17)

    landings = {"A": [(5.05, 4.98), (4.92, 5.07), (5.1, 5.02), (4.97, 4.9), (5.03, 5.06)],
                "B": [(5.3, 4.8), (4.75, 5.2), (5.22, 5.25), (4.8, 4.7), (5.15, 5.1)]}
    for suas, pts in landings.items():
        for k, (x, y) in enumerate(pts):
            trial(f"WP-{suas}{k + 1}", "waypoint", suas,
                  measurements={"final_position": [x, y, 0.0],
                                "tape_error_m": round(math.hypot(x - 5, y - 5) + 0.01, 3)})

    flags = {"A": [(True, False, False), (True, True, False), (True, False, False), (True, True, True)],
             "B": [(False, True, False), (True, True, False), (True, True, True), (False, False, False)]}
    for suas, fl in flags.items():
        for k, (p, c, r) in enumerate(fl):
            trial(f"AP-{suas}{k + 1}", "aperture", suas, outcome="success" if p else "failure",
                  measurements={"aperture": {"passed": p, "contact": c, "ripped": r}})

    oa_plan = {"A": [(0.0, 1.1, True), (0.0, 0.6, True), (0.32, 0.8, False), (0.24, 0.8, False), (0.26, 0.9, False)],
               "B": [(0.55, 1.2, False), (0.48, 1.0, False), (0.61, 1.4, False), (0.0, 0.7, True), (0.52, 1.1, False)]}
    cats = {"A": ["OA-C1", "OA-C1", "OA-B1", "OA-B1", "OA-B1"], "B": ["OA-A1", "OA-A1", "OA-A1", "OA-C1", "OA-A1"]}
    for suas, plan in oa_plan.items():
        for k, (d, a, col) in enumerate(plan):
            name = f"oa_{suas}{k + 1}.csv"
            oa_flight(name, d, a, col)
            trial(f"OA-{suas}{k + 1}", "oa-wall", suas, outcome="failure" if col else "success",
                  collisions=1 if col else 0, oa_category=cats[suas][k], telemetry=f"telemetry/{name}")

    cr_plan = {"A": [(1.0, 0.5, 0.2, "CR-A2"), (1.2, 0.6, 0.2, "CR-A2"), (1.1, 0.8, 0.4, "CR-B1")],
               "B": [(1.0, 0.4, 0.1, "CR-A1"), (0.9, 0.5, 0.3, "CR-A2"), (1.3, 0.6, 0.2, "CR-A2")]}
    for suas, plan in cr_plan.items():
        for k, (tc, vin, vout, cat) in enumerate(plan):
            name = f"cr_{suas}{k + 1}.csv"
            cr_flight(name, tc, vin, vout)
            trial(f"CR-{suas}{k + 1}", "cr-wall", suas, collisions=1, cr_category=cat, t_collision_s=tc,
                  telemetry=f"telemetry/{name}")

    trial("EN-A1", "endurance", "A", laps=20, duration_min=8.0)
    trial("EN-B1", "endurance", "B", laps=23, duration_min=32.0)

    levels = [20, 8, 3, 1.3]
    for suas, seen in (("A", 23), ("B", 19)):
        obs = []
        n = 0
        for surface, count in (("wall", 18), ("floor", 5), ("ceiling", 5)):
            for k in range(count):
                n += 1
                o = {"target_id": f"{surface[0].upper()}{k + 1}", "surface": surface}
                if rng.random() < seen / 28:
                    o["resolved_mm"] = rng.choice(levels)
                obs.append(o)
        trial(f"RC-{suas}1", "room-clearing", suas, duration_min=6.5 if suas == "A" else 9.0,
              measurements={"acuity": obs})

    trial("NZ-A1", "noise", "A", measurements={"noise_db": {"ambient": [30.0], "hover 2.5 m": [90.0]}})
    trial("NZ-B1", "noise", "B", measurements={"noise_db": {"ambient": [30.0, 31.0], "hover 2.5 m": [84.0, 86.0]}})

    def pos(label, dist, obs, conn, fly, lat=None):
        d = {"label": label, "distance_m": dist, "obstructions": obs, "connect": conn, "fly": fly}
        if lat is not None:
            d["latency_ms"] = lat
        return d

    horiz = [(14, [{"count": 1, "material": "drywall"}]), (20, [{"count": 2, "material": "drywall"}]),
             (25, [{"count": 3, "material": "drywall"}]), (27, [{"count": 4, "material": "drywall"}]),
             (31, [{"count": 4, "material": "drywall"}, {"count": 1, "material": "concrete"}])]
    a_conn = ["good", "good", "bad", "none", "none"]
    a_fly = ["possible", "possible", "not_possible", "not_possible", "not_possible"]
    trial("NL-A1", "nlos", "A", measurements={"nlos": [
        pos(f"X-{i + 1}", d, o, a_conn[i], a_fly[i], 200 if i < 2 else None) for i, (d, o) in enumerate(horiz)]})
    trial("NL-B1", "nlos", "B", measurements={"nlos": [
        pos(f"X-{i + 1}", d, o, "good", "possible", 150 + 10 * i) for i, (d, o) in enumerate(horiz)]})

    trial("LT-A1", "latency", "A", measurements={"latency": {"frames": [6, 6, 5, 7, 6, 6, 5, 6, 7, 6], "fps": 30}})
    trial("LT-B1", "latency", "B", measurements={"latency": {"frames": [4, 5, 4, 4, 5, 4, 4], "fps": 30}})

    trial("LG-A1", "logistics", "A", measurements={"responses": {
        "battery_swap_s": 45.0, "case_included": True, "controller": "Dedicated tablet", "weight_g": 370.0}})
    trial("LG-B1", "logistics", "B", measurements={"responses": {
        "battery_swap_s": 130.0, "case_included": False, "controller": "phone", "weight_g": 1450.0}})

    for suas, outcomes in (("A", "SSSSSSSSSS"), ("B", "SSSSSFSSSS")):
        for k, o in enumerate(outcomes):
            trial(f"TO-{suas}{k + 1}", "takeoff", suas, outcome="success" if o == "S" else "failure",
                  rollovers=0 if o == "S" else 1)

    trial("MR-A1", "map-res", "A", measurements={
        "dimensions": {"reported": [2.41, 3.05, 2.44], "truth": [2.44, 3.05, 2.44]},
        "fov": {"visible": 11, "total": 20},
        "shapes": list("CCCSCCICSC"),
        "acuity_mm": [8, 8, 8, 20, 8, 8, 8, 8, 3]})
    trial("MR-B1", "map-res", "B", measurements={
        "dimensions": {"reported": [1.9, 2.1], "truth": [2.0, 2.0]},
        "fov": {"visible": 20, "total": 20},
        "shapes": list("CCCCCCCCSC"),
        "acuity_mm": [3, 3, 8, 3, 1.3, 3, 3, 8, 3]})

    # fiducial ground truth; traversal and turns as in the handbook's example
    fid = [("A", 11, 2), ("B", 8, 2), ("C", 35, 7), ("D", 5, 2), ("E", 12, 3),
           ("F", 7, 2), ("G", 27, 5), ("H", 7, 2), ("I", 16, 3), ("J", 10, 2)]
    gt = {}
    fiducials = []
    for k, (fid_id, trav, turns) in enumerate(fid):
        x, y = round(2.0 + 3.1 * (k % 5), 2), round(1.5 + 4.2 * (k // 5), 2)
        gt[fid_id] = (x, y)
        fiducials.append({"id": fid_id, "x": x, "y": y, "min_traversal": trav, "min_turns": turns})
    for suas, scale, noise, drop in (("A", 20.0, 0.08, {"C", "G"}), ("B", 25.0, 0.03, {"C"})):
        rows = []
        for fid_id, _, _ in fid:
            x, y = gt[fid_id]
            for half in (1, 2):
                if fid_id in drop and half == 2:
                    rows.append((fid_id, half, "", "", "missing"))
                    continue
                mx = (x + rng.gauss(0, noise)) * scale
                my = (y + rng.gauss(0, noise)) * scale
                state = "partial" if rng.random() < 0.15 else "complete"
                rows.append((fid_id, half, round(mx, 2), round(my, 2), state))
        write_csv(OUT / f"fiducials_{suas}.csv", ["fiducial_id", "half", "x", "y", "mapped"], rows)
        trial(f"MA-{suas}1", "map-acc", suas, measurements={"fiducials_csv": f"fiducials_{suas}.csv"})

    campaign = {
        "schema_version": 1,
        "suas": [{"id": "A", "name": "sUAS A"}, {"id": "B", "name": "sUAS B"}],
        "environments": [
            {"id": "lab", "lighting": "lighted", "lux": 450, "dims": [12, 8, 3.5],
             "surfaces": ["concrete floor", "drywall"], "indoor": True},
            {"id": "lab-dark", "lighting": "dark", "lux": 0.5, "indoor": True},
            {"id": "building", "lighting": "lighted", "indoor": True,
             "obstructions": [{"count": 4, "material": "drywall"}, {"count": 1, "material": "concrete"}]},
        ],
        "tests": [
            {"id": "wall-following", "type": "wall_following", "environment": "lab",
             "reference_path": {"vertices": [[0, 0, 1], [10, 0, 1]], "closed": False}, "path_length_m": 10},
            {"id": "waypoint", "type": "waypoint", "environment": "lab", "waypoint": [5, 5, 0]},
            {"id": "aperture", "type": "aperture", "environment": "lab-dark"},
            {"id": "oa-wall", "type": "obstacle_avoidance", "environment": "lab",
             "obstacle": {"kind": "plane_segment", "p0": [5, -2], "p1": [5, 2], "height": 3, "material": "wall"}},
            {"id": "cr-wall", "type": "collision_resilience", "environment": "lab",
             "obstacle": {"kind": "plane_segment", "p0": [5, -2], "p1": [5, 2], "height": 3, "material": "wall"}},
            {"id": "endurance", "type": "endurance", "environment": "lab"},
            {"id": "room-clearing", "type": "room_clearing", "environment": "lab"},
            {"id": "noise", "type": "noise", "environment": "lab"},
            {"id": "nlos", "type": "nlos_comms", "environment": "building"},
            {"id": "latency", "type": "nlos_latency", "environment": "lab"},
            {"id": "logistics", "type": "logistics", "criteria": {
                "battery_swap_s": {"op": "max", "value": 120},
                "case_included": {"op": "equals", "value": True},
                "controller": {"op": "contains", "value": "tablet"},
                "weight_g": {"op": "max", "value": 2000}}},
            {"id": "takeoff", "type": "takeoff", "environment": "lab"},
            {"id": "map-res", "type": "mapping_resolution", "environment": "lab"},
            {"id": "map-acc", "type": "mapping_accuracy", "environment": "lab", "fiducials": fiducials},
        ],
        "trials": trials,
    }
    write_json(OUT / "campaign.json", campaign)

    write_json(OUT / "features.json", {
        "features": [
            {"name": "flight_time_min", "direction": "higher"},
            {"name": "charge_time_min", "direction": "lower"},
            {"name": "stream_resolution", "direction": "higher", "ordinal_map": {"FHD30p": 2, "FHD": 3}},
            {"name": "fov_deg", "direction": "higher"},
            {"name": "max_range_m", "direction": "higher"},
            {"name": "thermal_resolution", "direction": "higher", "ordinal_map": {"160x120": 1}},
            {"name": "weight_g", "direction": "lower"},
            {"name": "max_speed_mps", "direction": "higher"},
            {"name": "sensors", "direction": "higher"},
            {"name": "smart_behaviors", "direction": "higher"},
        ],
        "systems": [
            {"id": "A", "n_al": 3, "values": {
                "flight_time_min": 15, "charge_time_min": 50, "stream_resolution": "FHD", "fov_deg": 100,
                "max_range_m": 2000, "thermal_resolution": "N/A", "weight_g": 370, "max_speed_mps": 3,
                "sensors": 3, "smart_behaviors": 2}},
            {"id": "B", "n_al": 1, "values": {
                "flight_time_min": 10, "charge_time_min": 90, "stream_resolution": "FHD30p", "fov_deg": 114,
                "max_range_m": 500, "thermal_resolution": "160x120", "weight_g": 1450, "max_speed_mps": 6.5,
                "sensors": 10, "smart_behaviors": 7}},
        ],
    })
    write_json(OUT / "weights_user.json", {
        "flight_time_min": 0.07, "charge_time_min": 0.03, "stream_resolution": 0.1, "fov_deg": 0.1,
        "max_range_m": 0.05, "thermal_resolution": 0.1, "weight_g": 0.05, "max_speed_mps": 0.05,
        "sensors": 0.15, "smart_behaviors": 0.30})

    tests = ["corridor", "aperture", "takeoff", "landing", "endurance", "room_clearing"]
    table = {
        "A": [0.90, 1.0, 0.71, 0.87, 0.76, 0.73], "B": [1, 1, 1, 1, 0.5, 0.76],
        "C": [0.84, 1, 1, 0.87, None, None], "D": [0.83, 0.83, 1, 1, 0.5, 0.79],
        "E": [None, None, 0.75, 0.97, 0.65, 0.75], "F": [None, None, 0.99, 0.91, None, None],
        "G": [0.80, 1.0, 0.82, 0.89, None, 0.85]}
    rows = []
    for s, vals in table.items():
        for t, v in zip(tests, vals):
            if v is not None:
                rows.append((s, t, float(v)))
    write_csv(OUT / "predictive_scores.csv", ["suas_id", "test_id", "score"], rows)

    write_csv(OUT / "takeoff_scores.csv",
              ["suas_id", "test_id", "mc.crashes", "mc.completion", "mc.rollovers",
               "ec.roll", "ec.pitch", "ec.lateral", "ec.vertical"],
              [("A", "takeoff", 0.0, 1.0, 0.0, 5.0, 5.0, 2.4, 1.2),
               ("B", "takeoff", 0.0, 0.9, 1.0, 5.0, 5.0, 2.4, 1.2),
               ("C", "takeoff", 1.0, 0.8, 1.0, 8.0, 9.0, 3.2, 1.6)])

    # SEEV parameters; front distance is not shown on this OCU
    ses = [("landolt_red", "Landolt C (Red)", 3, 2, 3, 3), ("landolt_orange", "Landolt C (Orange)", 3, 2, 3, 3),
           ("landolt_green", "Landolt C (Green)", 3, 2, 3, 3), ("landolt_blue", "Landolt C (Blue)", 2, 2, 3, 3),
           ("image_oxygen", "Image (Oxygen)", 2, 2, 2, 3), ("image_radioactive", "Image (Radioactive)", 2, 2, 2, 3),
           ("altitude", "Altitude", 1, 1, 2, 1), ("heading", "Heading", 1, 1, 2, 1),
           ("front_distance", "Front Distance", 1, 1, 2, 1), ("battery", "sUAS Battery", 2, 1, 1, 2)]
    write_csv(OUT / "seev.csv", ["se_id", "name", "saliency", "effort", "expectancy", "value", "present"],
              [(i, n, s, e, x, v, "false" if i == "front_distance" else "true") for i, n, s, e, x, v in ses])
    groups = {
        "Aviate": ["altitude", "heading", "front_distance", "battery", "image_oxygen", "image_radioactive",
                   "landolt_red", "landolt_orange", "landolt_green", "landolt_blue"],
        "Navigate": ["altitude", "heading", "front_distance", "image_oxygen", "image_radioactive",
                     "landolt_red", "landolt_orange", "landolt_green", "landolt_blue"],
        "Hazard": ["landolt_red", "landolt_orange", "landolt_green", "landolt_blue", "image_oxygen",
                   "image_radioactive", "altitude", "heading", "front_distance"],
    }
    write_csv(OUT / "groups.csv", ["group", "se_id"], [(g, s) for g, ss in groups.items() for s in ss])

    skill = {i: 0.45 + 0.05 * k for k, (i, *_r) in enumerate(ses)}
    sagat = []
    for p in range(1, 9):
        for k, (se, *_r) in enumerate(ses):
            for level in (1, 2):
                correct = rng.random() < skill[se] + (0.1 if level == 1 else -0.1)
                sagat.append((f"P{p:02d}", f"Q{k + 1}{'ab'[level - 1]}", se, level, "true" if correct else "false"))
    write_csv(OUT / "sagat.csv", ["participant_id", "question_id", "se_id", "sa_level", "correct"], sagat)

    survey = []
    for p in range(1, 21):
        cond = "manual" if p <= 10 else "assisted"
        shift = 0 if cond == "manual" else 1
        manip = "false" if p in (4, 15) else "true"
        for inst, items in (("CTPA", 9), ("HCTM", 12)):
            for it in range(1, items + 1):
                score = min(7, max(1, round(rng.gauss(4 + shift, 1.0))))
                survey.append((f"P{p:02d}", inst, f"{inst[0]}{it}", score, manip, cond))
    write_csv(OUT / "survey.csv", ["participant_id", "instrument", "item_id", "score", "manip_pass", "condition"],
              survey)
    write_csv(OUT / "preferences.csv", ["participant_id", "preferred", "reason"],
              [(f"P{p:02d}", "assisted" if rng.random() < 0.7 else "manual", "") for p in range(1, 21)])


if __name__ == "__main__":
    main()

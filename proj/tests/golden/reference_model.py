#!/usr/bin/env python3
"""Independent reference model for the desk dataset.

Re-derives every frozen golden file under tests/golden/desk/ straight from
the CSV inputs in data/desk/, without touching the C++ code:

    python3 tests/golden/reference_model.py

Dispatch rule: fuels ranked by kgCO2/kWh (ties by fuel enumeration order),
each takes min(cap, remaining load); wind/solar leftovers are curtailment.
Storage sits ahead of the first fossil fuel and behind every curtailable
fuel, charges only from curtailment and starts empty.
"""
import csv
import json
import math
import os
from collections import defaultdict

ROOT = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
DATA = os.path.join(ROOT, "data", "desk")
OUT = os.path.join(ROOT, "tests", "golden", "desk")

ENUM = ["Biomass", "Coal", "NaturalGasTurbine", "NaturalGasCombinedCycle", "Hydroelectric",
        "Nuclear", "Photovoltaic", "Wind", "Storage"]
ALIASES = {"Nuclear": "Nuclear", "Hydro": "Hydroelectric", "Wind": "Wind", "Solar": "Photovoltaic",
           "Biomass": "Biomass", "Gas-CC": "NaturalGasCombinedCycle", "Gas": "NaturalGasTurbine",
           "Coal": "Coal", "Photovoltaic": "Photovoltaic"}
TABLE = {"Biomass": 0.28, "Coal": 0.92, "NaturalGasTurbine": 0.55, "NaturalGasCombinedCycle": 0.44,
         "Hydroelectric": 0.024, "Nuclear": 0.012, "Photovoltaic": 0.026, "Wind": 0.011}
FOSSIL = {"Coal", "NaturalGasTurbine", "NaturalGasCombinedCycle"}
CURTAILABLE = {"Wind", "Photovoltaic"}


def fuel_name(raw):
    if raw in ALIASES:
        return ALIASES[raw]
    return "Other(%s)" % raw.lower()


def rank(fuel):
    return (ENUM.index(fuel), "") if fuel in ENUM else (len(ENUM), fuel)


def fmt(x):
    return "%.6f" % x


def read_mix():
    rows = defaultdict(list)
    with open(os.path.join(DATA, "fuel_mix.csv")) as f:
        for r in csv.DictReader(f):
            rows[fuel_name(r["fuel"])].append(float(r["mwh"]))
    mix = {}
    for fuel, vals in rows.items():
        assert len(vals) % 4 == 0
        mix[fuel] = [(vals[4 * h] + vals[4 * h + 1] + vals[4 * h + 2] + vals[4 * h + 3]) / 4
                     for h in range(len(vals) // 4)]
    return mix


def read_load():
    with open(os.path.join(DATA, "load.csv")) as f:
        return [float(r["mwh"]) for r in csv.DictReader(f)]


def future_additions(multiplier=1.0):
    with open(os.path.join(DATA, "projects.csv")) as f:
        projects = list(csv.DictReader(f))
    profiles = defaultdict(list)
    with open(os.path.join(DATA, "profiles.csv")) as f:
        for r in csv.DictReader(f):
            profiles[r["project_id"]].append(float(r["capacity_factor"]))
    add = {}
    for p in projects:
        flags = set(x for x in p["flags"].split("|") if x)
        keep = "SecurityScreeningComplete" in flags and (
            "InterconnectStudyComplete" in flags
            or {"FullInterconnectSurveyInProgress", "InterconnectionAgreementComplete"} <= flags)
        if not keep:
            continue
        fuel = fuel_name(p["fuel"])
        cap = float(p["capacity_mw"]) * multiplier
        cf = profiles[p["project_id"]]
        acc = add.setdefault(fuel, [0.0] * len(cf))
        for h in range(len(cf)):
            acc[h] += cap * cf[h]
    return add


def intensity_table(fuels):
    t = dict(TABLE)
    for f in fuels:
        if f not in t:
            t[f] = TABLE["NaturalGasCombinedCycle"]
    return t


def emissions(dispatched, table):
    return sum(dispatched[f] * 1000.0 * table[f] for f in sorted(dispatched, key=rank))


def hour_record(load, dispatched, curtailed, unmet, table, charge=0.0, soc=0.0):
    e = emissions(dispatched, table)
    gen = sum(dispatched[f] for f in sorted(dispatched, key=rank))
    return {"load": load, "dispatched": dispatched, "curtailed": curtailed, "unmet": unmet,
            "emissions": e, "intensity": e / (gen * 1000.0) if gen > 0 else 0.0,
            "charge": charge, "soc": soc}


def run(load, caps, storage=None):
    """caps: fuel -> hourly list. storage: dict or None."""
    fuels = sorted(caps, key=rank)
    table = intensity_table(fuels)
    order = sorted(fuels, key=lambda f: (table[f], rank(f)))
    if storage is not None:
        slot = next((i for i, f in enumerate(order) if f in FOSSIL), len(order))
        for i, f in enumerate(order):
            if f in CURTAILABLE:
                slot = max(slot, i + 1)
        order.insert(slot, "Storage")
        leg = math.sqrt(storage["eff"])
        soc, pool = 0.0, 0.0
    hours = []
    for h in range(len(load)):
        avail = {f: caps[f][h] for f in fuels}
        htable = dict(table)
        if storage is not None:
            avail["Storage"] = min(soc * leg, storage["discharge"])
            htable["Storage"] = pool / (soc * leg * 1000.0) if storage["average"] and soc > 0 else 0.0
        remaining = load[h]
        dispatched, curtailed = {}, {}
        for f in order:
            take = min(avail[f], remaining)
            remaining -= take
            dispatched[f] = take
            if f in CURTAILABLE:
                curtailed[f] = avail[f] - take
        charge = 0.0
        if storage is not None:
            out = dispatched["Storage"]
            if out > 0:
                before = soc
                soc = 0.0 if out == soc * leg else max(0.0, soc - out / leg)
                pool = pool * (soc / before) if before > 0 else 0.0
            surplus = sum(curtailed[f] for f in sorted(curtailed, key=rank))
            if surplus > 0 and soc < storage["capacity"]:
                charge = min(surplus, storage["charge"])
                if soc + charge * leg > storage["capacity"]:
                    charge = (storage["capacity"] - soc) / leg
                    soc = storage["capacity"]
                else:
                    soc += charge * leg
                for f in sorted(curtailed, key=rank):
                    absorbed = curtailed[f] if charge >= surplus else charge * (curtailed[f] / surplus)
                    if storage["average"]:
                        pool += absorbed * 1000.0 * table[f]
                    curtailed[f] = 0.0 if charge >= surplus else curtailed[f] - absorbed
        hours.append(hour_record(load[h], dispatched, curtailed, remaining, htable, charge,
                                 soc if storage is not None else 0.0))
    return hours


def accounting(mix):
    fuels = sorted(mix, key=rank)
    table = intensity_table(fuels)
    n = len(mix[fuels[0]])
    hours = []
    for h in range(n):
        d = {f: mix[f][h] for f in fuels}
        gen = sum(d[f] for f in fuels)
        hours.append(hour_record(gen, d, {}, 0.0, table))
    return hours


def report(name, hours, capacity=None, charged_hours=None):
    gen = {}
    for hr in hours:
        for f in sorted(hr["dispatched"], key=rank):
            gen[f] = gen.get(f, 0.0) + hr["dispatched"][f]
    gen = {f: gen[f] for f in sorted(gen, key=rank)}
    total = sum(gen.values())
    renew = gen.get("Wind", 0.0) + gen.get("Photovoltaic", 0.0) + gen.get("Storage", 0.0)
    em = 0.0
    unmet = 0.0
    load = 0.0
    curt = defaultdict(float)
    for hr in hours:
        em += hr["emissions"]
        unmet += hr["unmet"]
        load += hr["load"]
        for f in sorted(hr["curtailed"], key=rank):
            curt[f] += hr["curtailed"][f]
    r = {
        "name": name,
        "hours": len(hours),
        "total_load_mwh": load,
        "total_generation_mwh": total,
        "generation_mwh": gen,
        "shares": {f: v / total for f, v in gen.items()},
        "renewables_share": renew / total,
        "annual_emissions_kg": em,
        "average_intensity_kg_per_kwh": em / (total * 1000.0),
        "annual_curtailment_mwh": sum(curt[f] for f in sorted(curt, key=rank)),
        "unmet_energy_mwh": unmet,
        "storage_capacity_mwh": capacity,
        "storage_utilization": None,
    }
    if capacity is not None:
        used = sum(1 for hr in hours if hr["dispatched"].get("Storage", 0.0) > 0)
        r["storage_utilization"] = used / len(hours)
    return r


def hourly_csv(hours):
    fuels = sorted({f for hr in hours for f in hr["dispatched"]}, key=rank)
    lines = ["hour,load," + ",".join(fuels)
             + ",unmet,curtailment,storage_charge,soc,emissions_kg,intensity_kg_per_kwh"]
    for h, hr in enumerate(hours):
        curt = sum(hr["curtailed"][f] for f in sorted(hr["curtailed"], key=rank))
        cells = [str(h), fmt(hr["load"])] + [fmt(hr["dispatched"].get(f, 0.0)) for f in fuels]
        cells += [fmt(hr["unmet"]), fmt(curt), fmt(hr["charge"]), fmt(hr["soc"]),
                  fmt(hr["emissions"]), fmt(hr["intensity"])]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def sized_capacity(load, caps):
    probe = run(load, caps, {"capacity": math.inf, "charge": math.inf, "discharge": math.inf,
                             "eff": 1.0, "average": False})
    peak, peak_hour = 0.0, None
    for h, hr in enumerate(probe):
        if hr["soc"] > peak:
            peak, peak_hour = hr["soc"], h
    return peak, peak_hour


def write(path, text):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", newline="\n") as f:
        f.write(text)


def main():
    mix = read_mix()
    load = read_load()
    add = future_additions()
    future_caps = dict(mix)
    for f, series in add.items():
        future_caps[f] = [a + b for a, b in zip(mix[f], series)]

    scen = []
    scen.append(("baseline_accounting", accounting(mix), None))
    scen.append(("baseline", run(load, mix), None))
    scen.append(("future_no_storage", run(load, future_caps), None))
    cap, peak_hour = sized_capacity(load, future_caps)
    sized = run(load, future_caps, {"capacity": cap, "charge": math.inf, "discharge": math.inf,
                                    "eff": 1.0, "average": False})
    scen.append(("future_sized", sized, cap))
    limited = run(load, future_caps, {"capacity": 300.0, "charge": 100.0, "discharge": 150.0,
                                      "eff": 0.81, "average": True})
    scen.append(("future_limited", limited, 300.0))

    reports = []
    for name, hours, capacity in scen:
        r = report(name, hours, capacity)
        reports.append(r)
        write(os.path.join(OUT, name, "hourly.csv"), hourly_csv(hours))
        write(os.path.join(OUT, name, "report.json"), json.dumps(r, indent=2) + "\n")

    ref = reports[0]
    lines = ["scenario,metric,value,reference,delta,relative_change"]
    for r in reports:
        for metric, key in [("emissions_kg", "annual_emissions_kg"),
                            ("average_intensity_kg_per_kwh", "average_intensity_kg_per_kwh"),
                            ("curtailment_mwh", "annual_curtailment_mwh"),
                            ("renewables_share", "renewables_share")]:
            v, rv = r[key], ref[key]
            rel = fmt((v - rv) / rv) if rv > 0 else "NA"
            lines.append(",".join([r["name"], metric, fmt(v), fmt(rv), fmt(v - rv), rel]))
    write(os.path.join(OUT, "comparison.csv"), "\n".join(lines) + "\n")

    mix_lines = ["scenario,fuel,share"]
    for r in reports:
        for f, s in r["shares"].items():
            mix_lines.append("%s,%s,%s" % (r["name"], f, fmt(s)))
    write(os.path.join(OUT, "mix.csv"), "\n".join(mix_lines) + "\n")
    write(os.path.join(OUT, "intensity.csv"),
          "\n".join(["scenario,average_intensity_kg_per_kwh"]
                    + ["%s,%s" % (r["name"], fmt(r["average_intensity_kg_per_kwh"])) for r in reports]) + "\n")

    sizing = []
    for name, caps in [("baseline", mix), ("future_no_storage", future_caps),
                       ("future_sized", future_caps), ("future_limited", future_caps)]:
        c, ph = sized_capacity(load, caps)
        check = run(load, caps, {"capacity": c, "charge": math.inf, "discharge": math.inf,
                                 "eff": 1.0, "average": False})
        residual = sum(sum(hr["curtailed"].values()) for hr in check)
        sizing.append({"scenario": name, "storage_capacity_mwh": c, "storage_capacity_gwh": c / 1000.0,
                       "peak_soc_hour": ph, "residual_curtailment_mwh": residual})
    write(os.path.join(OUT, "sizing.json"), json.dumps(sizing, indent=2) + "\n")

    for r in reports:
        print("%-20s renew %.4f  intensity %.6f  curtail %.3f  storage %s util %s" % (
            r["name"], r["renewables_share"], r["average_intensity_kg_per_kwh"],
            r["annual_curtailment_mwh"], r["storage_capacity_mwh"], r["storage_utilization"]))


if __name__ == "__main__":
    main()

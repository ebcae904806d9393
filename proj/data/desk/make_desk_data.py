#!/usr/bin/env python3
"""Writes the 24-hour desk dataset (fuel mix, load, projects, profiles, config).

Every hourly value is an integer or a simple fraction so the dispatch can be
traced by hand.
"""
import json
import os

HERE = os.path.dirname(os.path.abspath(__file__))
HOURS = 24

SOLAR = [0, 0, 0, 0, 0, 0, 20, 80, 160, 240, 300, 340, 360, 340, 300, 240, 160, 80, 20, 0, 0, 0, 0, 0]
WIND = [200] * 6 + [150] * 12 + [250] * 6
BASELINE = {
    "Nuclear": [300] * HOURS,
    "Hydro": [20] * HOURS,
    "Wind": WIND,
    "Solar": SOLAR,
    "Biomass": [10] * HOURS,
    "Gas-CC": [350] * HOURS,
    "Gas": [150] * HOURS,
    "Coal": [250] * HOURS,
    "Other": [5] * HOURS,
}
LOAD = [900, 880, 870, 860, 870, 900, 950, 1000, 1050, 1100, 1150, 1180,
        1200, 1210, 1200, 1180, 1150, 1120, 1100, 1080, 1050, 1000, 950, 920]

SOLAR_CF = [0, 0, 0, 0, 0, 0, 0.05, 0.2, 0.4, 0.6, 0.75, 0.85, 0.9, 0.85, 0.75, 0.6, 0.4, 0.2, 0.05, 0, 0, 0, 0, 0]
WIND_CF = [0.6] * 6 + [0.25] * 12 + [0.5] * 6
PROJECTS = [
    ("P1", "Photovoltaic", 500, "Pecos", "SecurityScreeningComplete|InterconnectStudyComplete", SOLAR_CF),
    ("P2", "Wind", 200, "Nolan", "SecurityScreeningComplete|FullInterconnectSurveyInProgress|InterconnectionAgreementComplete", WIND_CF),
    ("P3", "Photovoltaic", 300, "Reeves", "SecurityScreeningComplete", SOLAR_CF),
    ("P4", "Wind", 100, "Scurry", "InterconnectStudyComplete", WIND_CF),
]


def quarters(v):
    # Four 15-minute values whose mean is v.
    if v < 2:
        return [v] * 4
    return [v - 2, v + 1, v + 2, v - 1]


def main():
    with open(os.path.join(HERE, "fuel_mix.csv"), "w", newline="\n") as f:
        f.write("timestamp,fuel,mwh\n")
        for fuel, series in BASELINE.items():
            for h in range(HOURS):
                for q, v in enumerate(quarters(series[h])):
                    f.write(f"2023-01-01 {h:02d}:{15 * q:02d},{fuel},{v}\n")
    with open(os.path.join(HERE, "load.csv"), "w", newline="\n") as f:
        f.write("hour_index,mwh\n")
        for h, v in enumerate(LOAD):
            f.write(f"{h},{v}\n")
    with open(os.path.join(HERE, "projects.csv"), "w", newline="\n") as f:
        f.write("project_id,fuel,capacity_mw,county,flags\n")
        for pid, fuel, cap, county, flags, _ in PROJECTS:
            f.write(f"{pid},{fuel},{cap},{county},{flags}\n")
    with open(os.path.join(HERE, "profiles.csv"), "w", newline="\n") as f:
        f.write("project_id,hour_index,capacity_factor\n")
        for pid, _, _, _, _, cf in PROJECTS:
            for h, v in enumerate(cf):
                f.write(f"{pid},{h},{v}\n")
    config = {
        "reference": "baseline_accounting",
        "strict": True,
        "scenarios": [
            {"name": "baseline_accounting", "mode": "accounting", "fuel_mix": "fuel_mix.csv"},
            {"name": "baseline", "load": "load.csv", "fuel_mix": "fuel_mix.csv"},
            {"name": "future_no_storage", "load": "load.csv", "fuel_mix": "fuel_mix.csv",
             "projects": "projects.csv", "profiles": "profiles.csv"},
            {"name": "future_sized", "load": "load.csv", "fuel_mix": "fuel_mix.csv",
             "projects": "projects.csv", "profiles": "profiles.csv", "storage": "sized"},
            {"name": "future_limited", "load": "load.csv", "fuel_mix": "fuel_mix.csv",
             "projects": "projects.csv", "profiles": "profiles.csv",
             "storage": {"energy_capacity_mwh": 300, "charge_power_mw": 100, "discharge_power_mw": 150,
                         "round_trip_efficiency": 0.81, "discharge_intensity": "charged_average"}},
        ],
    }
    with open(os.path.join(HERE, "scenarios.json"), "w", newline="\n") as f:
        json.dump(config, f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main()

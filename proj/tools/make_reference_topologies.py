#!/usr/bin/env python3
"""Writes data/topologies/janos-us.json and germany50.json.

Both are approximate reconstructions of the SNDlib instances of the same
name: city coordinates are rounded public values, links follow a plausible
backbone layout, and great-circle lengths are mapped affinely onto the
published min/max cable lengths (janos-us 145..1127 km, germany50 36..236 km).
"""

import json
import math
import sys
from pathlib import Path

JANOS_US = [
    ("Atlanta", 33.75, -84.39), ("Boston", 42.36, -71.06), ("Chicago", 41.88, -87.63),
    ("Cleveland", 41.50, -81.69), ("Dallas", 32.78, -96.80), ("Denver", 39.74, -104.99),
    ("ElPaso", 31.76, -106.49), ("Houston", 29.76, -95.37), ("KansasCity", 39.10, -94.58),
    ("LasVegas", 36.17, -115.14), ("LosAngeles", 34.05, -118.24), ("Miami", 25.76, -80.19),
    ("Minneapolis", 44.98, -93.27), ("Nashville", 36.16, -86.78), ("NewOrleans", 29.95, -90.07),
    ("NewYork", 40.71, -74.01), ("Philadelphia", 39.95, -75.17), ("Phoenix", 33.45, -112.07),
    ("Pittsburgh", 40.44, -79.99), ("Portland", 45.52, -122.68), ("Raleigh", 35.78, -78.64),
    ("SaltLakeCity", 40.76, -111.89), ("SanFrancisco", 37.77, -122.42), ("Seattle", 47.61, -122.33),
    ("StLouis", 38.63, -90.20), ("Washington", 38.91, -77.04),
]

JANOS_US_LINKS = [
    ("Seattle", "Portland"), ("Seattle", "SaltLakeCity"), ("Seattle", "Minneapolis"),
    ("Portland", "SanFrancisco"), ("Portland", "SaltLakeCity"), ("SanFrancisco", "LosAngeles"),
    ("SanFrancisco", "SaltLakeCity"), ("SanFrancisco", "LasVegas"), ("LosAngeles", "LasVegas"),
    ("LosAngeles", "Phoenix"), ("LasVegas", "SaltLakeCity"), ("Phoenix", "ElPaso"),
    ("Phoenix", "Denver"), ("SaltLakeCity", "Denver"), ("Denver", "KansasCity"),
    ("Denver", "Minneapolis"), ("ElPaso", "Dallas"), ("ElPaso", "Houston"),
    ("Dallas", "Houston"), ("Dallas", "KansasCity"), ("Houston", "NewOrleans"),
    ("Dallas", "StLouis"), ("KansasCity", "StLouis"), ("KansasCity", "Chicago"),
    ("Minneapolis", "Chicago"), ("StLouis", "Chicago"), ("StLouis", "Nashville"),
    ("NewOrleans", "Atlanta"), ("NewOrleans", "Miami"), ("Nashville", "Atlanta"),
    ("Chicago", "Cleveland"), ("Atlanta", "Miami"), ("Atlanta", "Raleigh"),
    ("Raleigh", "Washington"), ("Cleveland", "Pittsburgh"), ("Pittsburgh", "Washington"),
    ("Cleveland", "NewYork"), ("Washington", "Philadelphia"), ("Philadelphia", "NewYork"),
    ("NewYork", "Boston"), ("Boston", "Cleveland"), ("Houston", "Atlanta"),
]

GERMANY50 = [
    ("Aachen", 50.78, 6.08), ("Augsburg", 48.37, 10.90), ("Bayreuth", 49.95, 11.58),
    ("Berlin", 52.52, 13.40), ("Bielefeld", 52.02, 8.53), ("Braunschweig", 52.27, 10.52),
    ("Bremen", 53.08, 8.80), ("Bremerhaven", 53.54, 8.58), ("Chemnitz", 50.83, 12.92),
    ("Darmstadt", 49.87, 8.65), ("Dortmund", 51.51, 7.47), ("Dresden", 51.05, 13.74),
    ("Duesseldorf", 51.23, 6.78), ("Erfurt", 50.98, 11.03), ("Essen", 51.46, 7.01),
    ("Flensburg", 54.79, 9.44), ("Frankfurt", 50.11, 8.68), ("Freiburg", 47.99, 7.85),
    ("Fulda", 50.55, 9.68), ("Giessen", 50.58, 8.68), ("Greifswald", 54.09, 13.38),
    ("Hamburg", 53.55, 9.99), ("Hannover", 52.37, 9.73), ("Kaiserslautern", 49.44, 7.77),
    ("Karlsruhe", 49.01, 8.40), ("Kassel", 51.31, 9.48), ("Kempten", 47.73, 10.31),
    ("Kiel", 54.32, 10.12), ("Koblenz", 50.36, 7.59), ("Koeln", 50.94, 6.96),
    ("Konstanz", 47.66, 9.18), ("Leipzig", 51.34, 12.37), ("Magdeburg", 52.12, 11.63),
    ("Mannheim", 49.49, 8.47), ("Muenchen", 48.14, 11.58), ("Muenster", 51.96, 7.63),
    ("Norden", 53.60, 7.21), ("Nuernberg", 49.45, 11.08), ("Oldenburg", 53.14, 8.21),
    ("Osnabrueck", 52.28, 8.05), ("Passau", 48.57, 13.43), ("Regensburg", 49.01, 12.10),
    ("Saarbruecken", 49.24, 6.99), ("Schwerin", 53.64, 11.40), ("Siegen", 50.87, 8.02),
    ("Stuttgart", 48.78, 9.18), ("Trier", 49.75, 6.64), ("Ulm", 48.40, 9.99),
    ("Wesel", 51.66, 6.62), ("Wuerzburg", 49.79, 9.95),
]
GERMANY50_LINKS = 88
GERMANY50_MAX_DEGREE = 5


def great_circle_km(a, b):
    lat1, lon1, lat2, lon2 = map(math.radians, (a[1], a[2], b[1], b[2]))
    h = math.sin((lat2 - lat1) / 2) ** 2 + math.cos(lat1) * math.cos(lat2) * math.sin((lon2 - lon1) / 2) ** 2
    return 2 * 6371.0 * math.asin(math.sqrt(h))


def plane_xy(city, ref_lat):
    # Equirectangular projection, km.
    return (round(math.radians(city[2]) * 6371.0 * math.cos(math.radians(ref_lat)), 1),
            round(math.radians(city[1]) * 6371.0, 1))


def rescale(lengths, lo, hi):
    dmin, dmax = min(lengths), max(lengths)
    return [round(lo + (d - dmin) * (hi - lo) / (dmax - dmin), 1) for d in lengths]


def emit(name, cities, pairs, lo, hi):
    index = {c[0]: i for i, c in enumerate(cities)}
    ref_lat = sum(c[1] for c in cities) / len(cities)
    raw = [great_circle_km(cities[index[a]], cities[index[b]]) for a, b in pairs]
    lengths = rescale(raw, lo, hi)
    nodes = []
    for i, c in enumerate(cities):
        x, y = plane_xy(c, ref_lat)
        nodes.append({"id": i, "x": x, "y": y})
    links = [{"id": k, "a": index[a], "b": index[b], "length_km": lengths[k]} for k, (a, b) in enumerate(pairs)]
    return {"name": name, "nodes": nodes, "links": links}


def germany_links(cities):
    n = len(cities)
    cand = sorted((great_circle_km(cities[i], cities[j]), i, j) for i in range(n) for j in range(i + 1, n))
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    chosen, degree = [], [0] * n
    for d, i, j in cand:  # Kruskal spanning tree
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            chosen.append((i, j))
            degree[i] += 1
            degree[j] += 1
    taken = set(chosen)
    for v in range(n):  # no stub nodes: backbone sites are dual-homed
        for d, i, j in cand:
            if degree[v] >= 2:
                break
            if v in (i, j) and (i, j) not in taken:
                chosen.append((i, j))
                taken.add((i, j))
                degree[i] += 1
                degree[j] += 1
    for d, i, j in cand:  # shortest extra links under a degree cap
        if len(chosen) == GERMANY50_LINKS:
            break
        if (i, j) in taken or degree[i] >= GERMANY50_MAX_DEGREE or degree[j] >= GERMANY50_MAX_DEGREE:
            continue
        chosen.append((i, j))
        taken.add((i, j))
        degree[i] += 1
        degree[j] += 1
    chosen.sort()
    return [(cities[i][0], cities[j][0]) for i, j in chosen]


def main(out_dir):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    docs = {
        "janos-us.json": emit("janos-us", JANOS_US, JANOS_US_LINKS, 145.0, 1127.0),
        "germany50.json": emit("germany50", GERMANY50, germany_links(GERMANY50), 36.0, 236.0),
    }
    for fname, doc in docs.items():
        (out / fname).write_text(json.dumps(doc, indent=1) + "\n")
        print(f"{fname}: {len(doc['nodes'])} nodes, {len(doc['links'])} links")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/topologies")

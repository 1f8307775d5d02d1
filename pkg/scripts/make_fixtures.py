#!/usr/bin/env python3
"""Regenerate the bundled dataset fixtures under src/vmap/data/.

Blood, Netherlands, and Germany are compiled here from public reference
data (US blood-type distribution; CBS 2020 province populations; Destatis
state areas in km^2). Les Miserables comes from the standard 77-character
co-occurrence graph bundled with networkx; vertex weight is the character's
total co-occurrence count and cluster labels are greedy-modularity
communities (6, structure only). networkx is needed only by this script,
never at runtime.
"""

import json
from pathlib import Path

DATA_DIR = Path(__file__).resolve().parent.parent / "src" / "vmap" / "data"

BLOOD_SHARES = {
    "O+": 37.4, "O-": 6.6, "A+": 35.7, "A-": 6.3,
    "B+": 8.5, "B-": 1.5, "AB+": 3.4, "AB-": 0.6,
}
# donor -> recipients (compatible transfusion pairs, undirected in the graph)
BLOOD_EDGES = [
    ("O-", "O+"), ("O-", "A-"), ("O-", "A+"), ("O-", "B-"),
    ("O-", "B+"), ("O-", "AB-"), ("O-", "AB+"),
    ("O+", "A+"), ("O+", "B+"), ("O+", "AB+"),
    ("A-", "A+"), ("A-", "AB-"), ("A-", "AB+"),
    ("B-", "B+"), ("B-", "AB-"), ("B-", "AB+"),
    ("A+", "AB+"), ("B+", "AB+"), ("AB-", "AB+"),
]

NETHERLANDS = {
    "GR": ("Groningen", 585866),
    "FR": ("Friesland", 649957),
    "DR": ("Drenthe", 493682),
    "OV": ("Overijssel", 1162406),
    "FL": ("Flevoland", 423021),
    "GE": ("Gelderland", 2085952),
    "UT": ("Utrecht", 1354834),
    "NH": ("Noord-Holland", 2879527),
    "ZH": ("Zuid-Holland", 3708696),
    "ZE": ("Zeeland", 383488),
    "NB": ("Noord-Brabant", 2562955),
    "LI": ("Limburg", 1117201),
}
NETHERLANDS_EDGES = [
    ("GR", "FR"), ("GR", "DR"), ("FR", "DR"), ("FR", "OV"), ("FR", "FL"),
    ("DR", "OV"), ("OV", "FL"), ("OV", "GE"), ("FL", "GE"), ("FL", "UT"),
    ("FL", "NH"), ("GE", "UT"), ("GE", "ZH"), ("GE", "NB"), ("GE", "LI"),
    ("UT", "NH"), ("UT", "ZH"), ("NH", "ZH"), ("ZH", "ZE"), ("ZH", "NB"),
    ("ZE", "NB"), ("NB", "LI"),
]

GERMANY = {
    "BW": ("Baden-Wuerttemberg", 35751),
    "BY": ("Bayern", 70550),
    "BE": ("Berlin", 892),
    "BB": ("Brandenburg", 29654),
    "HB": ("Bremen", 419),
    "HH": ("Hamburg", 755),
    "HE": ("Hessen", 21115),
    "MV": ("Mecklenburg-Vorpommern", 23214),
    "NI": ("Niedersachsen", 47609),
    "NW": ("Nordrhein-Westfalen", 34113),
    "RP": ("Rheinland-Pfalz", 19854),
    "SL": ("Saarland", 2569),
    "SN": ("Sachsen", 18450),
    "ST": ("Sachsen-Anhalt", 20452),
    "SH": ("Schleswig-Holstein", 15802),
    "TH": ("Thueringen", 16202),
}
GERMANY_EDGES = [
    ("SH", "HH"), ("SH", "NI"), ("SH", "MV"), ("HH", "NI"),
    ("MV", "NI"), ("MV", "BB"),
    ("NI", "HB"), ("NI", "NW"), ("NI", "HE"), ("NI", "TH"), ("NI", "ST"),
    ("BB", "BE"), ("BB", "ST"), ("BB", "SN"),
    ("ST", "SN"), ("ST", "TH"),
    ("SN", "TH"), ("SN", "BY"),
    ("TH", "BY"), ("TH", "HE"),
    ("HE", "NW"), ("HE", "RP"), ("HE", "BW"), ("HE", "BY"),
    ("NW", "RP"), ("RP", "SL"), ("RP", "BW"), ("BW", "BY"),
]


def simple_fixture(names, weights, edges, note):
    return {
        "note": note,
        "vertices": [
            {"id": vid, "label": label, "weight": weight}
            for vid, label, weight in zip(names, [n[0] for n in weights], [n[1] for n in weights])
        ],
        "edges": [[a, b] for a, b in edges],
    }


def les_miserables():
    import networkx as nx
    from networkx.algorithms.community import greedy_modularity_communities

    g = nx.les_miserables_graph()
    communities = greedy_modularity_communities(g, cutoff=6, best_n=6)
    communities = sorted((sorted(c) for c in communities), key=lambda c: c[0])
    cluster_of = {}
    for i, members in enumerate(communities):
        for m in members:
            cluster_of[m] = f"c{i}"
    vertices = []
    for name in sorted(g.nodes()):
        weight = sum(d["weight"] for _, _, d in g.edges(name, data=True))
        vertices.append(
            {"id": name, "label": name, "weight": weight, "cluster": cluster_of[name]}
        )
    edges = sorted([sorted((a, b)) for a, b in g.edges()])
    return {
        "note": "Les Miserables character co-occurrence network (Knuth, Stanford "
        "GraphBase); weight = total co-occurrence count; 6 greedy-modularity clusters.",
        "vertices": vertices,
        "edges": edges,
    }


def main():
    DATA_DIR.mkdir(parents=True, exist_ok=True)
    fixtures = {
        "blood.json": {
            "note": "US blood group shares (percent of population) with donor-"
            "compatibility edges.",
            "vertices": [
                {"id": vid, "label": vid, "weight": share}
                for vid, share in BLOOD_SHARES.items()
            ],
            "edges": [[a, b] for a, b in BLOOD_EDGES],
        },
        "netherlands.json": {
            "note": "Dutch provinces; weight = population (CBS, 2020); edges = "
            "geographic adjacency.",
            "vertices": [
                {"id": vid, "label": label, "weight": pop}
                for vid, (label, pop) in NETHERLANDS.items()
            ],
            "edges": [[a, b] for a, b in NETHERLANDS_EDGES],
        },
        "germany.json": {
            "note": "German states; weight = area in km^2 (Destatis); edges = "
            "geographic adjacency.",
            "vertices": [
                {"id": vid, "label": label, "weight": area}
                for vid, (label, area) in GERMANY.items()
            ],
            "edges": [[a, b] for a, b in GERMANY_EDGES],
        },
        "les-miserables.json": les_miserables(),
    }
    for name, doc in fixtures.items():
        path = DATA_DIR / name
        path.write_text(json.dumps(doc, indent=2) + "\n")
        print(f"wrote {path} ({len(doc['vertices'])} vertices, {len(doc['edges'])} edges)")


if __name__ == "__main__":
    main()

"""One-off generator for the bundled catalog data files.

Transcribes the eleven minimal non-metrizable graphs, their example systems,
and the unit-multiplier certificates (1-based source labels, shifted to
0-based here), validates everything against the decision machinery, and
writes graphNN.graph / .system / .cert plus catalog.json and a checksum file.
"""

import hashlib
import json
import pathlib
import sys
from fractions import Fraction

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from pathmet.graph import Graph, format_graph
from pathmet.systems import PathSystem, is_consistent, format_path_system
from pathmet.metrize import (CertLine, Certificate, decide_metrizable,
                             format_certificate, verify_certificate)

# (edges, paths, cert rows [(chosen, competitor)], forced edge), all 1-based


def P(s):
    return tuple(int(c) for c in s)


ENTRIES = [
    # 1: two hubs 1,2 joined by paths 1-3-2, 1-4-2, 1-5-2, 1-6-7-2
    dict(
        edges=[(1, 4), (1, 6), (6, 7), (2, 7), (2, 4), (1, 5), (2, 5), (1, 3), (2, 3)],
        paths="132 13 14 15 16 167 23 24 25 276 27 314 325 316 3167 415 4276 427 516 527 67",
        cert=[("325", "315"), ("415", "425"), ("4276", "416"), ("3167", "327")],
        forced=(6, 7),
    ),
    # 2: 5-cycle with two ears at 1
    dict(
        edges=[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (1, 6), (3, 6), (1, 7), (4, 7)],
        paths="12 163 174 15 16 17 23 234 2345 216 217 34 345 36 347 45 436 47 5436 517 6347",
        cert=[("2345", "215"), ("216", "236"), ("517", "547"), ("6347", "617")],
        forced=(3, 4),
    ),
    # 3
    dict(
        edges=[(1, 7), (1, 6), (3, 6), (3, 4), (4, 7), (2, 5), (1, 5), (2, 4), (2, 6), (3, 5)],
        paths="1742 163 174 15 16 17 263 24 25 26 247 34 35 36 347 435 436 47 516 5347 617",
        cert=[("263", "243"), ("516", "536"), ("1742", "162"), ("5347", "517")],
        forced=(4, 7),
    ),
    # 4: the quotient example graph
    dict(
        edges=[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (6, 7), (2, 6), (5, 7), (3, 6), (4, 7)],
        paths="12 123 1234 15 126 157 23 234 215 26 2157 34 345 36 367 45 476 47 5126 57 67",
        cert=[("1234", "154"), ("2157", "267"), ("5126", "576"),
              ("367", "347"), ("476", "436"), ("345", "3215")],
        forced=(1, 2),
    ),
    # 5
    dict(
        edges=[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (6, 7), (2, 6), (5, 6), (3, 7), (4, 7)],
        paths="12 1543 154 15 156 1567 23 2154 215 26 237 34 345 326 37 45 47 476 56 567 67",
        cert=[("1543", "123"), ("2154", "234"), ("237", "267"),
              ("326", "376"), ("567", "547"), ("476", "456")],
        forced=(1, 5),
    ),
    # 6
    dict(
        edges=[(1, 2), (1, 5), (1, 6), (2, 3), (3, 4), (3, 8), (4, 5), (4, 7), (6, 7), (6, 8)],
        paths="12 1543 154 15 16 167 168 23 234 2345 216 2167 2168 34 345 386 347 38 45 "
              "4516 47 438 516 547 5168 67 68 7438",
        cert=[("7438", "768"), ("2345", "215"), ("5168", "5438"), ("2167", "2347")],
        forced=(1, 6),
    ),
    # 7: 7-cycle plus a hub adjacent to 1, 3, 6
    dict(
        edges=[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 1), (1, 8), (3, 8), (6, 8)],
        paths="12 123 17654 1765 176 17 18 23 234 2345 23456 217 218 34 345 3456 3217 38 45 "
              "456 4567 438 56 567 5438 67 68 768",
        cert=[("5438", "568"), ("218", "238"), ("768", "718"),
              ("17654", "1234"), ("23456", "2176"), ("3217", "34567")],
        forced=(4, 5),
    ),
    # 8
    dict(
        edges=[(1, 2), (1, 6), (2, 3), (2, 7), (3, 4), (4, 5), (4, 8), (5, 6), (6, 8), (7, 8)],
        paths="12 123 1234 165 16 1687 168 23 234 2165 216 27 278 34 345 3456 327 3278 45 "
              "456 487 48 56 5487 548 687 68 78",
        cert=[("1687", "127"), ("3278", "348"), ("548", "568"),
              ("1234", "1654"), ("2165", "2345"), ("3456", "3216")],
        forced=(7, 8),
    ),
    # 9
    dict(
        edges=[(1, 2), (1, 6), (1, 7), (2, 3), (2, 7), (3, 4), (4, 5), (5, 6), (5, 8), (7, 8)],
        paths="12 16543 1654 165 16 17 178 23 234 2345 216 27 23458 34 345 3456 327 3458 45 "
              "456 4327 458 56 587 58 6587 658 78",
        cert=[("16543", "123"), ("23458", "278"), ("6587", "617"),
              ("4327", "4587"), ("178", "1658"), ("216", "23456")],
        forced=(3, 4),
    ),
    # 10
    dict(
        edges=[(1, 2), (1, 7), (1, 8), (2, 3), (3, 4), (3, 8), (4, 5), (5, 6), (5, 9),
               (6, 7), (7, 9)],
        paths="12 183 1834 1765 176 17 18 179 23 234 2345 23456 217 218 2179 34 345 3456 "
              "3817 38 3459 45 456 43817 438 459 56 567 5438 59 67 6718 679 718 79 83459",
        cert=[("23456", "2176"), ("43817", "4567"), ("83459", "8179"),
              ("1765", "18345"), ("218", "238"), ("679", "659")],
        forced=(3, 4),
    ),
    # 11: theta graph with arms 3, 3, 4 between hubs 1 and 2
    dict(
        edges=[(1, 3), (1, 5), (1, 7), (2, 4), (2, 6), (2, 9), (3, 4), (5, 6), (7, 8), (8, 9)],
        paths="17892 13 134 15 156 17 178 1789 243 24 265 26 2987 298 29 34 315 3156 317 "
              "3178 3429 4265 426 4317 43178 429 56 517 5178 51789 62987 6298 629 78 789 89",
        cert=[("62987", "6517"), ("43178", "4298"), ("51789", "5629"),
              ("4265", "4315"), ("3156", "3426"), ("3429", "31789")],
        forced=(7, 8),
    ),
]


def shift(seq):
    return tuple(v - 1 for v in seq)


def main() -> None:
    out_dir = pathlib.Path(__file__).resolve().parents[1] / "src" / "pathmet" / "data"
    out_dir.mkdir(exist_ok=True)
    index = []
    checksums = []
    for i, entry in enumerate(ENTRIES, start=1):
        n = max(max(e) for e in entry["edges"])
        g = Graph.from_edges(n, [shift(e) for e in entry["edges"]])
        paths = [shift(P(tok)) for tok in entry["paths"].split()]
        ps = PathSystem.from_paths(g, paths)
        ok, witness = is_consistent(ps)
        assert ok, f"entry {i} system inconsistent at {witness}"
        cert = Certificate(
            lines=tuple(CertLine(shift(P(a)), shift(P(b)), Fraction(1))
                        for a, b in entry["cert"]),
            strict=False)
        assert verify_certificate(ps, cert), f"entry {i} certificate invalid"
        forced = tuple(sorted(shift(entry["forced"])))
        assert cert.forced_edges(g) == [forced], \
            f"entry {i}: cert forces {cert.forced_edges(g)}, expected {forced}"
        verdict = decide_metrizable(ps, strict=False)
        assert not verdict.metrizable, f"entry {i} decided metrizable?!"
        lp_forced = verdict.certificate.forced_edges(g)
        assert forced in lp_forced, \
            f"entry {i}: LP forces {lp_forced}, appendix says {forced}"

        names = {}
        for kind, text in (("graph", format_graph(g)),
                           ("system", format_path_system(ps)),
                           ("cert", format_certificate(cert))):
            name = f"graph{i:02d}.{kind}"
            (out_dir / name).write_text(text)
            names[kind] = name
            checksums.append((name, hashlib.sha256(text.encode()).hexdigest()))
        index.append({"id": i, "graph": names["graph"], "system": names["system"],
                      "certificate": names["cert"], "forced_edge": list(forced)})
        print(f"entry {i}: n={g.n} m={g.m} forced={forced} lp_forced={lp_forced}")

    index_text = json.dumps(index, indent=1) + "\n"
    (out_dir / "catalog.json").write_text(index_text)
    checksums.append(("catalog.json", hashlib.sha256(index_text.encode()).hexdigest()))
    (out_dir / "checksums.sha256").write_text(
        "".join(f"{h}  {name}\n" for name, h in checksums))
    print("wrote", out_dir)


if __name__ == "__main__":
    main()

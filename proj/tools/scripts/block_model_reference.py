"""Pure-Python block model generator following docs/formats.md.

Prints the edge count and FNV-1a 64 fingerprint of the edge list so golden
values in the C++ tests can be checked against an independent implementation.

    python3 tools/scripts/block_model_reference.py A:40,B:25,C:10 0.08 0.01 42
"""

import math
import sys

MASK = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def mix64(x):
    x &= MASK
    x ^= x >> 30
    x = (x * 0xBF58476D1CE4E5B9) & MASK
    x ^= x >> 27
    x = (x * 0x94D049BB133111EB) & MASK
    x ^= x >> 31
    return x


def uniform(seed, stream, counter):
    x = mix64(seed + GOLDEN * (stream + 1))
    x = mix64(x + GOLDEN * (counter + 1))
    return (x >> 11) * 2.0**-53


def generate(regions, p_intra, p_inter, seed):
    total = sum(n for _, n in regions)
    width = len(str(total - 1)) if total > 1 else 1
    names, first = [], []
    for _, n in regions:
        base = len(names)
        first.append(base)
        names.extend("f" + str(base + k).zfill(width) for k in range(n))
    edges = []
    R = len(regions)
    for c in range(R):
        for d in range(R):
            p = p_intra if c == d else p_inter
            rows = regions[c][1]
            cols = regions[d][1] - 1 if c == d else regions[d][1]
            cells = rows * cols
            if p <= 0.0 or cells == 0:
                continue

            def emit(cell):
                i, j = divmod(cell, cols)
                if c == d and j >= i:
                    j += 1
                edges.append((names[first[c] + i], names[first[d] + j]))

            if p >= 1.0:
                for cell in range(cells):
                    emit(cell)
                continue
            stream = c * R + d
            log_q = math.log1p(-p)
            cell, k = 0, 0
            while True:
                u = 1.0 - uniform(seed, stream, k)
                k += 1
                skip = math.floor(math.log(u) / log_q)
                if skip >= cells - cell:
                    break
                cell += skip
                emit(cell)
                cell += 1
                if cell >= cells:
                    break
    return edges


def fnv1a(edges):
    h = 0xCBF29CE484222325
    for s, t in edges:
        for byte in f"{s},{t}\n".encode():
            h ^= byte
            h = (h * 0x100000001B3) & MASK
    return h


def main():
    spec, p_intra, p_inter, seed = sys.argv[1:5]
    regions = [(label, int(n)) for label, n in (item.split(":") for item in spec.split(","))]
    edges = generate(regions, float(p_intra), float(p_inter), int(seed))
    print(len(edges), hex(fnv1a(edges)))


if __name__ == "__main__":
    main()

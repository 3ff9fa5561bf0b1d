"""Independent reference implementations used only to cross-check results.

These deliberately avoid the library's refinement machinery: the
automorphism oracle extends point maps in natural index order with plain
collinearity checks and verifies the full line set at the leaves.
"""

from itertools import permutations


def naive_automorphisms(cfg):
    """All line-preserving point bijections, by unpruned-order backtracking."""
    v = len(cfg.points)
    lines = set(cfg.lines)
    ranks = [0] * v
    for line in cfg.lines:
        for p in line:
            ranks[p] += 1
    coll = [[False] * v for _ in range(v)]
    for line in cfg.lines:
        for p in line:
            for q in line:
                if p != q:
                    coll[p][q] = True
    found = []
    images = [-1] * v
    used = [False] * v

    def rec(p):
        if p == v:
            mapped = {
                tuple(sorted((images[a], images[b], images[c]))) for a, b, c in cfg.lines
            }
            if mapped == lines:
                found.append(tuple(images))
            return
        for q in range(v):
            if used[q] or ranks[q] != ranks[p]:
                continue
            if any(coll[p][r] != coll[q][images[r]] for r in range(p)):
                continue
            images[p] = q
            used[q] = True
            rec(p + 1)
            used[q] = False
            images[p] = -1

    rec(0)
    return found


def pair_action_automorphisms(grassmannian_cfg, n):
    """The automorphisms of the pair Grassmannian induced by permuting the
    underlying n elements; the labels are '{i,j}' pair strings."""
    index = {label: k for k, label in enumerate(grassmannian_cfg.points)}

    def pair(i, j):
        return "{%s,%s}" % ((i, j) if i < j else (j, i))

    maps = set()
    for g in permutations(range(1, n + 1)):
        image = [0] * len(grassmannian_cfg.points)
        for label, k in index.items():
            i, j = (int(part) for part in label.strip("{}").split(","))
            image[k] = index[pair(g[i - 1], g[j - 1])]
        maps.add(tuple(image))
    return maps

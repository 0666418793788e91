"""Sparse exact elimination over CycloScalar.

Vectors are dicts from an orderable key to a nonzero scalar.  The leading
entry of a vector is the one with the smallest key, so with monomial
indices in descending grlex order the reduced echelon forms produced here
are the canonical ones.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor


def axpy(r, f, p):
    """Return r - f*p."""
    out = dict(r)
    for k, v in p.items():
        t = f * v
        s = out.get(k)
        if s is None:
            out[k] = -t
        else:
            s = s - t
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def reduce_vector(vec, pivots):
    """Reduce ``vec`` against fully reduced echelon rows keyed by pivot."""
    hits = [k for k in vec if k in pivots]
    for k in hits:
        c = vec.get(k)
        if c:
            vec = axpy(vec, c, pivots[k])
    return vec


class Echelon:
    """Incrementally maintained reduced row echelon form."""

    def __init__(self):
        self.pivots = {}

    def add(self, vec):
        """Insert ``vec``; return True if it enlarged the span."""
        r = reduce_vector(vec, self.pivots)
        if not r:
            return False
        p = min(r)
        inv = r[p].inverse()
        r = {k: v * inv for k, v in r.items()}
        for q, row in self.pivots.items():
            c = row.get(p)
            if c:
                self.pivots[q] = axpy(row, c, r)
        self.pivots[p] = r
        return True

    def rows(self):
        return [self.pivots[p] for p in sorted(self.pivots)]

    def __len__(self):
        return len(self.pivots)


def rref(rows):
    ech = Echelon()
    for r in rows:
        ech.add(r)
    return ech.rows()


def rank(rows):
    return len(rref(rows))


def components(columns):
    """Group column indices whose images share target keys."""
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    col_root = []
    for j, col in enumerate(columns):
        node = ("c", j)
        parent[node] = node
        for key in col:
            tnode = ("t", key)
            if tnode not in parent:
                parent[tnode] = tnode
            a, b = find(node), find(tnode)
            if a != b:
                parent[a] = b
        col_root.append(node)
    groups = {}
    for j, node in enumerate(col_root):
        groups.setdefault(find(node), []).append(j)
    return sorted(groups.values(), key=lambda g: g[0])


def _component_kernel(args):
    idx, cols, one = args
    ech = Echelon()
    for j, col in zip(idx, cols):
        aug = {(0, k): v for k, v in col.items()}
        aug[(1, j)] = one
        ech.add(aug)
    out = []
    for row in ech.rows():
        if min(row)[0] == 1:
            out.append({k[1]: v for k, v in row.items()})
    return out


def kernel(columns, field, workers=1):
    """Canonical RREF basis of {v : sum_j v_j * columns[j] = 0}.

    Rows are dicts keyed by column position.  Independent blocks of the
    sparse matrix are eliminated separately (optionally in worker processes);
    the merged result does not depend on ``workers``.
    """
    groups = components(columns)
    tasks = [(g, [columns[j] for j in g], field.one) for g in groups]
    if workers > 1 and len(tasks) > 1:
        chunk = max(1, len(tasks) // (4 * workers))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_component_kernel, tasks, chunksize=chunk))
    else:
        parts = [_component_kernel(t) for t in tasks]
    rows = [r for part in parts for r in part]
    rows.sort(key=min)
    return rows

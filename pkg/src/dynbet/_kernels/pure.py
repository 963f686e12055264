"""Pure-Python kernels: the fallback backend and readable reference.

Every function here has a compiled twin in ``_ckern`` with the same
signature, the same traversal orders, the same tie-breaking and the same
floating-point operation order, so the two backends produce bit-identical
results. Keep the two files in lockstep when changing anything.

Shared conventions:
  * adjacency is CSR: (indptr, indices, weights), int64/int64/float64;
  * ``dist``/``sigma`` matrices are C-contiguous float64, +inf marks
    unreachable;
  * distance equality uses a relative tolerance of 1e-9 (exact for the
    integer-valued arithmetic of unit-weight graphs);
  * ``counters`` is an int64[5] array or None, slots:
    0 nodes_visited, 1 edges_scanned, 2 source_list_scans,
    3 pq_inserts, 4 pq_extracts.
"""

from __future__ import annotations

import numpy as np

BACKEND = "pure"

INF = float("inf")
REL_TOL = 1e-9

# pair-state codes from the incremental affectedness test
_NOT, _EQUAL, _STRICT = 0, 1, 2


def _close(a: float, b: float) -> bool:
    m = 1.0
    aa = abs(a)
    if aa > m:
        m = aa
    bb = abs(b)
    if bb > m:
        m = bb
    return abs(a - b) <= REL_TOL * m


def _pair_state(lhs: float, base: float, w: float) -> int:
    """Affectedness of a pair: lhs = old d(s,t), base = d(s,u)+d(v,t), w = new weight."""
    if base == INF:
        return _NOT
    rhs = base + w
    if lhs == INF:
        return _STRICT
    if _close(lhs, rhs):
        return _EQUAL
    if lhs > rhs:
        return _STRICT
    return _NOT


# ---------------------------------------------------------------------------
# deterministic priority structures (mirrored exactly in the compiled twin)
# ---------------------------------------------------------------------------


class _Heap:
    """Binary heap over (priority, node) with node id as the tie-break.

    ``sign=+1`` is a min-heap ordered by (prio, node) ascending; ``sign=-1``
    a max-heap ordered descending. Lazy duplicates are allowed; callers skip
    stale pops themselves.
    """

    def __init__(self, cap: int, sign: int):
        self.prio = np.empty(cap, dtype=np.float64)
        self.node = np.empty(cap, dtype=np.int64)
        self.size = 0
        self.sign = sign

    def _before(self, p1, n1, p2, n2) -> bool:
        if p1 != p2:
            return p1 < p2 if self.sign > 0 else p1 > p2
        return n1 < n2 if self.sign > 0 else n1 > n2

    def push(self, p: float, x: int) -> None:
        prio, node = self.prio, self.node
        if self.size == len(prio):
            self.prio = prio = np.resize(prio, 2 * len(prio))
            self.node = node = np.resize(node, 2 * len(node))
        i = self.size
        self.size += 1
        while i > 0:
            par = (i - 1) >> 1
            if self._before(p, x, prio[par], node[par]):
                prio[i] = prio[par]
                node[i] = node[par]
                i = par
            else:
                break
        prio[i] = p
        node[i] = x

    def pop(self) -> tuple[float, int]:
        prio, node = self.prio, self.node
        top_p, top_n = prio[0], int(node[0])
        self.size -= 1
        sz = self.size
        if sz > 0:
            p, x = prio[sz], node[sz]
            i = 0
            while True:
                l = 2 * i + 1
                if l >= sz:
                    break
                r = l + 1
                c = l
                if r < sz and self._before(prio[r], node[r], prio[l], node[l]):
                    c = r
                if self._before(prio[c], node[c], p, x):
                    prio[i] = prio[c]
                    node[i] = node[c]
                    i = c
                else:
                    break
            prio[i] = p
            node[i] = x
        return top_p, top_n


class _Buckets:
    """Bucket list over integer levels 0..n (level n holds +inf priorities).

    LIFO within a level via an intrusive linked list; supports both min-first
    and max-first sweeps.
    """

    def __init__(self, n: int):
        self.head = np.full(n + 1, -1, dtype=np.int64)
        self.nxt = np.empty(n, dtype=np.int64)
        self.n = n

    def level_of(self, d: float) -> int:
        return self.n if d == INF else int(d)

    def push(self, x: int, lev: int) -> None:
        self.nxt[x] = self.head[lev]
        self.head[lev] = x

    def pop_at(self, lev: int) -> int:
        x = int(self.head[lev])
        self.head[lev] = self.nxt[x]
        return x


# ---------------------------------------------------------------------------
# static primitives
# ---------------------------------------------------------------------------


def sssp(op, oi, ow, n, src, unit, dist, sigma, order):
    """Augmented single-source shortest paths; fills dist/sigma/order rows.

    Returns the number of settled (reachable) nodes. ``order`` lists them in
    nondecreasing distance.
    """
    dist[:] = INF
    sigma[:] = 0.0
    dist[src] = 0.0
    sigma[src] = 1.0
    cnt = 0
    if unit:
        q = np.empty(n, dtype=np.int64)
        head = tail = 0
        q[tail] = src
        tail += 1
        while head < tail:
            x = int(q[head])
            head += 1
            order[cnt] = x
            cnt += 1
            dx = dist[x]
            sx = sigma[x]
            for e in range(op[x], op[x + 1]):
                w = int(oi[e])
                if dist[w] == INF:
                    dist[w] = dx + 1.0
                    q[tail] = w
                    tail += 1
                if dist[w] == dx + 1.0:
                    sigma[w] += sx
        return cnt
    heap = _Heap(4 * n, +1)
    settled = np.zeros(n, dtype=bool)
    heap.push(0.0, src)
    while heap.size > 0:
        dx, x = heap.pop()
        if settled[x]:
            continue
        settled[x] = True
        dx = dist[x]
        order[cnt] = x
        cnt += 1
        sx = sigma[x]
        for e in range(op[x], op[x + 1]):
            w = int(oi[e])
            if settled[w]:
                continue
            cand = dx + ow[e]
            dw = dist[w]
            if dw == INF:
                dist[w] = cand
                sigma[w] = sx
                heap.push(cand, w)
            elif _close(cand, dw):
                sigma[w] += sx
            elif cand < dw:
                dist[w] = cand
                sigma[w] = sx
                heap.push(cand, w)
    return cnt


def accumulate(ip, ii, iw, n, src, unit, dist, sigma, order, cnt, delta):
    """Brandes dependency accumulation over one settled SSSP (Eq. form:
    delta(y) += sigma_y/sigma_w * (1 + delta(w)) for y in P_s(w))."""
    delta[:] = 0.0
    for k in range(cnt - 1, -1, -1):
        w = int(order[k])
        if w == src:
            continue
        dw = dist[w]
        g = (1.0 + delta[w]) / sigma[w]
        for e in range(ip[w], ip[w + 1]):
            y = int(ii[e])
            if y == src:
                continue
            dy = dist[y]
            if dy == INF:
                continue
            if _close(dy + iw[e], dw):
                delta[y] += sigma[y] * g
    # delta(src) stays 0: the source is not interior to any of its own pairs


def static_pass(op, oi, ow, ip, ii, iw, n, unit, scores,
                dist_mat=None, sigma_mat=None, delta_mat=None):
    """Full Brandes sweep; optionally fills the n x n dist/sigma/delta state."""
    scores[:] = 0.0
    own_rows = dist_mat is None
    if own_rows:
        dist = np.empty(n, dtype=np.float64)
        sigma = np.empty(n, dtype=np.float64)
    order = np.empty(n, dtype=np.int64)
    delta = np.empty(n, dtype=np.float64)
    for s in range(n):
        if not own_rows:
            dist = dist_mat[s]
            sigma = sigma_mat[s]
        cnt = sssp(op, oi, ow, n, s, unit, dist, sigma, order)
        accumulate(ip, ii, iw, n, s, unit, dist, sigma, order, cnt, delta)
        scores += delta
        if delta_mat is not None:
            delta_mat[s] = delta


# ---------------------------------------------------------------------------
# incremental update: affected sets and staging
# ---------------------------------------------------------------------------


def affected_sources(ip, ii, iw, n, u, v, wnew, dist, counters):
    """Pruned reverse BFS from u: sources s with d(s,v) >= d(s,u) + wnew."""
    c = counters if counters is not None else np.zeros(5, dtype=np.int64)
    tested = np.zeros(n, dtype=bool)
    q = np.empty(n, dtype=np.int64)
    out = []
    tested[u] = True
    if _pair_state(dist[u, v], dist[u, u], wnew) == _NOT:
        return np.empty(0, dtype=np.int64)
    head = tail = 0
    q[tail] = u
    tail += 1
    out.append(u)
    c[3] += 1
    while head < tail:
        s = int(q[head])
        head += 1
        c[4] += 1
        c[0] += 1
        for e in range(ip[s], ip[s + 1]):
            z = int(ii[e])
            c[1] += 1
            if tested[z]:
                continue
            tested[z] = True
            if _pair_state(dist[z, v], dist[z, u], wnew) != _NOT:
                q[tail] = z
                tail += 1
                out.append(z)
                c[3] += 1
    return np.asarray(out, dtype=np.int64)


def stage_update(op, oi, ow, n, u, v, wnew, unit, dist, sigma, sources, counters):
    """Forward pruned traversal from v staging new (dist, sigma) per affected pair.

    Returns (targets, preds, toff, tsrc, tnewd, tnews): targets in traversal
    order with their recorded predecessor, and target-major flattened groups
    of affected sources with staged values. Matrices are read-only here.
    """
    c = counters if counters is not None else np.zeros(5, dtype=np.int64)
    visited = np.zeros(n, dtype=bool)
    pred = np.full(n, -1, dtype=np.int64)
    tpos = np.full(n, -1, dtype=np.int64)
    targets = []
    preds_out = []
    toff = [0]
    tsrc = []
    tnewd = []
    tnews = []
    dist_v = dist[v]
    sigma_v = sigma[v]

    heap = None
    q = None
    if unit:
        q = np.empty(n, dtype=np.int64)
        head = tail = 0
        q[tail] = v
        tail += 1
    else:
        heap = _Heap(2 * n, +1)
        heap.push(0.0, v)
    visited[v] = True
    pred[v] = v
    c[3] += 1

    while True:
        if unit:
            if head >= tail:
                break
            t = int(q[head])
            head += 1
        else:
            if heap.size == 0:
                break
            _, t = heap.pop()
        c[4] += 1
        c[0] += 1
        ti = len(targets)
        p = int(pred[t])
        if p < 0:
            raise RuntimeError("traversal reached a target before any true predecessor")
        targets.append(t)
        preds_out.append(p)
        tpos[t] = ti
        if t == v:
            slist = sources
        else:
            j = int(tpos[p])
            slist = tsrc[toff[j] : toff[j + 1]]
        dvt = dist_v[t]
        for s in slist:
            s = int(s)
            c[2] += 1
            state = _pair_state(dist[s, t], dist[s, u] + dvt, wnew)
            if state == _NOT:
                continue
            if state == _STRICT:
                nd = dist[s, u] + wnew + dvt
                ns = sigma[s, u] * sigma_v[t]
            else:
                nd = dist[s, t]
                ns = sigma[s, t] + sigma[s, u] * sigma_v[t]
            tsrc.append(s)
            tnewd.append(nd)
            tnews.append(ns)
        toff.append(len(tsrc))
        for e in range(op[t], op[t + 1]):
            w = int(oi[e])
            c[1] += 1
            if not visited[w]:
                if _pair_state(dist[u, w], dist_v[w], wnew) != _NOT:
                    visited[w] = True
                    if _close(dvt + ow[e], dist_v[w]):
                        pred[w] = t
                    if unit:
                        q[tail] = w
                        tail += 1
                    else:
                        heap.push(dist_v[w], w)
                    c[3] += 1
            elif tpos[w] < 0 and _close(dvt + ow[e], dist_v[w]):
                # later scanner that is a true predecessor; keep predecessors
                # valid for weighted traversal order
                pred[w] = t
    return (
        np.asarray(targets, dtype=np.int64),
        np.asarray(preds_out, dtype=np.int64),
        np.asarray(toff, dtype=np.int64),
        np.asarray(tsrc, dtype=np.int64),
        np.asarray(tnewd, dtype=np.float64),
        np.asarray(tnews, dtype=np.float64),
    )


# ---------------------------------------------------------------------------
# dependency updates (subtract old contributions / add new ones)
# ---------------------------------------------------------------------------


def dep_pass(ip, ii, iw, n, s, unit, dist_row, sigma_row, targets, scores,
             coeff, delta, counters):
    """One source's dependency-change sweep (max-distance-first).

    With old rows and coeff < 0 this subtracts old-path contributions; with
    committed rows, the mutated graph and coeff > 0 it adds new-path ones.
    ``coeff`` is sign * (2 for undirected, 1 for directed). Fills ``delta``
    with the per-node accumulator and applies score changes in place.
    """
    c = counters if counters is not None else np.zeros(5, dtype=np.int64)
    delta[:] = 0.0
    in_t = np.zeros(n, dtype=np.int64)
    inq = np.zeros(n, dtype=np.int64)
    _dep_run(ip, ii, iw, n, s, unit, dist_row, sigma_row, targets, scores,
             coeff, delta, in_t, inq, 1, _Buckets(n), c, keep_delta=True)


def _dep_run(ip, ii, iw, n, s, unit, dist_row, sigma_row, targets, scores,
             coeff, delta, in_t_ep, inq_ep, epoch, bk, c, keep_delta):
    """Core sweep. ``delta`` must be all-zero on entry; with keep_delta the
    accumulator survives for the caller, otherwise entries are re-zeroed as
    they are consumed so the buffer can be reused without an O(n) reset.
    The bucket list drains completely each call and is safely reusable."""
    if unit:
        maxlev = 0
        for t in targets:
            t = int(t)
            in_t_ep[t] = epoch
            inq_ep[t] = epoch
            lev = bk.level_of(dist_row[t])
            if lev > maxlev:
                maxlev = lev
            bk.push(t, lev)
            c[3] += 1
        lev = maxlev
        while lev >= 0:
            if bk.head[lev] < 0:
                lev -= 1
                continue
            w = bk.pop_at(lev)
            _dep_visit(ip, ii, iw, s, dist_row, sigma_row, w, in_t_ep, inq_ep,
                       epoch, delta, scores, coeff, c, bk, None, keep_delta)
        return
    heap = _Heap(2 * max(1, len(targets)), -1)
    for t in targets:
        t = int(t)
        in_t_ep[t] = epoch
        inq_ep[t] = epoch
        heap.push(dist_row[t], t)
        c[3] += 1
    while heap.size > 0:
        _, w = heap.pop()
        _dep_visit(ip, ii, iw, s, dist_row, sigma_row, w, in_t_ep, inq_ep,
                   epoch, delta, scores, coeff, c, None, heap, keep_delta)


def _dep_visit(ip, ii, iw, s, dist_row, sigma_row, w, in_t_ep, inq_ep, epoch,
               delta, scores, coeff, c, bk, heap, keep_delta):
    c[4] += 1
    c[0] += 1
    dlw = delta[w]
    scores[w] += coeff * dlw
    if not keep_delta:
        delta[w] = 0.0  # never read again once extracted
    dw = dist_row[w]
    if dw == INF:
        return
    if in_t_ep[w] == epoch:
        g = (1.0 + dlw) / sigma_row[w]
    else:
        g = dlw / sigma_row[w]
    for e in range(ip[w], ip[w + 1]):
        y = int(ii[e])
        c[1] += 1
        if y == s:
            continue
        dy = dist_row[y]
        if dy == INF:
            continue
        if _close(dy + iw[e], dw):
            if inq_ep[y] != epoch:
                inq_ep[y] = epoch
                if bk is not None:
                    bk.push(y, bk.level_of(dy))
                else:
                    heap.push(dy, y)
                c[3] += 1
            delta[y] += sigma_row[y] * g


def dep_phase(ip, ii, iw, n, unit, dist, sigma, slist, tgt_off, tgt_flat,
              scores, coeff, counters):
    """dep_pass over a batch of sources (ascending id order)."""
    c = counters if counters is not None else np.zeros(5, dtype=np.int64)
    delta = np.zeros(n, dtype=np.float64)
    in_t_ep = np.zeros(n, dtype=np.int64)
    inq_ep = np.zeros(n, dtype=np.int64)
    bk = _Buckets(n)
    for k in range(len(slist)):
        s = int(slist[k])
        targets = tgt_flat[tgt_off[k] : tgt_off[k + 1]]
        _dep_run(ip, ii, iw, n, s, unit, dist[s], sigma[s], targets, scores,
                 coeff, delta, in_t_ep, inq_ep, k + 1, bk, c, keep_delta=False)


# ---------------------------------------------------------------------------
# KWCC baseline kernels
# ---------------------------------------------------------------------------


def kwcc_stage(op, oi, ow, ip, ii, iw, n, u, v, wnew, unit, dist, sigma,
               sources, counters):
    """Per-source pruned traversals from v (the redundancy iBet removes).

    Runs on the pre-update graph and matrices; sigma' is recomputed as a
    predecessor sum with a per-source overlay, the new/updated edge (u,v)
    contributing explicitly. Returns pair-major staged arrays grouped by
    source in ``sources`` order.
    """
    c = counters if counters is not None else np.zeros(5, dtype=np.int64)
    ps, pt, pd, psg = [], [], [], []
    ov_d = np.empty(n, dtype=np.float64)
    ov_s = np.empty(n, dtype=np.float64)
    ov_mark = np.zeros(n, dtype=np.int64)
    visited = np.zeros(n, dtype=np.int64)
    epoch = 0
    dist_v = dist[v]
    q = np.empty(n, dtype=np.int64)
    for s in sources:
        s = int(s)
        epoch += 1
        dsu = dist[s, u]
        heap = None
        head = tail = 0
        if unit:
            q[tail] = v
            tail += 1
        else:
            heap = _Heap(2 * n, +1)
            heap.push(0.0, v)
        visited[v] = epoch
        c[3] += 1
        while True:
            if unit:
                if head >= tail:
                    break
                t = int(q[head])
                head += 1
            else:
                if heap.size == 0:
                    break
                _, t = heap.pop()
            c[4] += 1
            c[0] += 1
            dvt = dist_v[t]
            state = _pair_state(dist[s, t], dsu + dvt, wnew)
            if state == _STRICT:
                nd = dsu + wnew + dvt
            else:
                nd = dist[s, t]
            ns = 0.0
            for e in range(ip[t], ip[t + 1]):
                z = int(ii[e])
                c[1] += 1
                if z == u and t == v:
                    continue  # stale weight on a decrease; added explicitly below
                if ov_mark[z] == epoch:
                    dz = ov_d[z]
                    sz = ov_s[z]
                else:
                    dz = dist[s, z]
                    sz = sigma[s, z]
                if dz == INF:
                    continue
                if _close(dz + iw[e], nd):
                    ns += sz
            if t == v and _close(dsu + wnew, nd):
                ns += sigma[s, u]
            ov_d[t] = nd
            ov_s[t] = ns
            ov_mark[t] = epoch
            ps.append(s)
            pt.append(t)
            pd.append(nd)
            psg.append(ns)
            for e in range(op[t], op[t + 1]):
                w = int(oi[e])
                c[1] += 1
                if visited[w] == epoch:
                    continue
                if _pair_state(dist[s, w], dsu + dist_v[w], wnew) != _NOT:
                    visited[w] = epoch
                    if unit:
                        q[tail] = w
                        tail += 1
                    else:
                        heap.push(dist_v[w], w)
                    c[3] += 1
    return (
        np.asarray(ps, dtype=np.int64),
        np.asarray(pt, dtype=np.int64),
        np.asarray(pd, dtype=np.float64),
        np.asarray(psg, dtype=np.float64),
    )


def kwcc_walk(ip, ii, iw, n, dist, sigma, pair_s, pair_t, scores, coeff, counters):
    """Per-pair predecessor walks scoring sigma(s,y)*sigma(y,t)/sigma(s,t).

    Call once with old graph/matrices and coeff < 0 (remove old paths), once
    with mutated graph and committed matrices and coeff > 0 (add new paths).
    Pairs with sigma(s,t) == 0 in the given snapshot are skipped.
    """
    c = counters if counters is not None else np.zeros(5, dtype=np.int64)
    visited = np.zeros(n, dtype=np.int64)
    q = np.empty(n, dtype=np.int64)
    epoch = 0
    for k in range(len(pair_s)):
        s = int(pair_s[k])
        t = int(pair_t[k])
        sst = sigma[s, t]
        if sst == 0.0:
            continue
        dst = dist[s, t]
        epoch += 1
        head = tail = 0
        row_d = dist[s]
        row_s = sigma[s]
        # seed with P_s(t)
        for e in range(ip[t], ip[t + 1]):
            y = int(ii[e])
            c[1] += 1
            if y == s:
                continue
            dy = row_d[y]
            if dy == INF:
                continue
            if _close(dy + iw[e], dst) and visited[y] != epoch:
                visited[y] = epoch
                q[tail] = y
                tail += 1
                c[3] += 1
        while head < tail:
            y = int(q[head])
            head += 1
            c[4] += 1
            c[0] += 1
            scores[y] += coeff * (row_s[y] * sigma[y, t] / sst)
            dy = row_d[y]
            for e in range(ip[y], ip[y + 1]):
                z = int(ii[e])
                c[1] += 1
                if z == s:
                    continue
                dz = row_d[z]
                if dz == INF:
                    continue
                if _close(dz + iw[e], dy) and visited[z] != epoch:
                    visited[z] = epoch
                    q[tail] = z
                    tail += 1
                    c[3] += 1


# ---------------------------------------------------------------------------
# KDB baseline kernels (unit-weight graphs)
# ---------------------------------------------------------------------------


def kdb_phase1(op, oi, ip, ii, n, u, v, undirected, dist, sigma, counters):
    """Per-source augmented-APSP update: case dispatch + in-place row rewrite.

    Runs on the already-mutated graph with pre-update matrices. Returns the
    non-skipped sources and, per source, the nodes whose row entries were
    traversed (the later dependency sweep is seeded with exactly these).
    """
    c = counters if counters is not None else np.zeros(5, dtype=np.int64)
    slist = []
    toff = [0]
    tflat = []
    newp = np.empty(n, dtype=np.float64)
    mark = np.zeros(n, dtype=np.int64)
    tent = np.empty(n, dtype=np.int64)
    enq = np.zeros(n, dtype=np.int64)
    settled = np.zeros(n, dtype=np.int64)
    bk = _Buckets(n)
    used_levels = []
    epoch = 0
    for s in range(n):
        c[0] += 1
        dsu = dist[s, u]
        dsv = dist[s, v]
        if undirected and dsv < dsu:
            a, b = v, u
            da, db = dsv, dsu
        else:
            a, b = u, v
            da, db = dsu, dsv
        if da == INF or db - da <= 0:
            continue
        epoch += 1
        touched_start = len(tflat)
        used_levels.clear()
        if db - da == 1.0:
            # case (ii): distances keep, sigma gains via new DAG paths a->b
            newp[b] = sigma[s, a]
            mark[b] = epoch
            lev = int(dist[s, b])
            bk.push(b, lev)
            used_levels.append(lev)
            c[3] += 1
            while lev <= n:
                if bk.head[lev] < 0:
                    lev += 1
                    continue
                x = bk.pop_at(lev)
                c[4] += 1
                tflat.append(x)
                sigma[s, x] += newp[x]
                dx = dist[s, x]
                for e in range(op[x], op[x + 1]):
                    y = int(oi[e])
                    c[1] += 1
                    if dist[s, y] == dx + 1.0:
                        if mark[y] != epoch:
                            newp[y] = 0.0
                            mark[y] = epoch
                            ylev = int(dist[s, y])
                            bk.push(y, ylev)
                            used_levels.append(ylev)
                            c[3] += 1
                        newp[y] += newp[x]
        else:
            # case (iii): partial BFS re-relaxation from b
            lev0 = int(da) + 1
            tent[b] = lev0
            enq[b] = epoch
            bk.push(b, lev0)
            used_levels.append(lev0)
            c[3] += 1
            lev = lev0
            while lev <= n:
                if bk.head[lev] < 0:
                    lev += 1
                    continue
                x = bk.pop_at(lev)
                if settled[x] == epoch or tent[x] != lev:
                    continue  # stale entry after a decrease
                settled[x] = epoch
                c[4] += 1
                dold = dist[s, x]
                nd = INF
                ns = 0.0
                for e in range(ip[x], ip[x + 1]):
                    z = int(ii[e])
                    c[1] += 1
                    dz = dist[s, z]
                    if dz == INF:
                        continue
                    cand = dz + 1.0
                    if cand < nd:
                        nd = cand
                        ns = sigma[s, z]
                    elif cand == nd:
                        ns += sigma[s, z]
                if nd < dold and dold != INF:
                    # x got closer: its old predecessors lose x as a successor
                    # and need a dependency recompute even though their own
                    # row entries are untouched. (On undirected graphs the
                    # loose enqueue test below reaches them anyway; directed
                    # graphs need this explicit seed.)
                    for e in range(ip[x], ip[x + 1]):
                        z = int(ii[e])
                        c[1] += 1
                        if settled[z] != epoch and mark[z] != epoch and dist[s, z] + 1.0 == dold:
                            mark[z] = epoch
                            tflat.append(z)
                dist[s, x] = nd
                sigma[s, x] = ns
                tflat.append(x)
                for e in range(op[x], op[x + 1]):
                    y = int(oi[e])
                    c[1] += 1
                    if settled[y] == epoch:
                        continue
                    dy_old = dist[s, y]
                    if dy_old >= nd:
                        t_new = int(nd + 1.0) if dy_old > nd + 1.0 else int(dy_old)
                        if enq[y] != epoch:
                            enq[y] = epoch
                            tent[y] = t_new
                            bk.push(y, t_new)
                            used_levels.append(t_new)
                            c[3] += 1
                        elif t_new < tent[y]:
                            tent[y] = t_new
                            bk.push(y, t_new)
                            used_levels.append(t_new)
                            c[3] += 1
        for lv in used_levels:
            bk.head[lv] = -1
        if len(tflat) > touched_start:
            slist.append(s)
            toff.append(len(tflat))
    return (
        np.asarray(slist, dtype=np.int64),
        np.asarray(toff, dtype=np.int64),
        np.asarray(tflat, dtype=np.int64),
    )


def kdb_phase2(op, oi, ip, ii, n, slist, toff, tflat, dist, sigma, delta_mat,
               scores, counters):
    """Bucket-list dependency sweep per non-skipped source.

    Recomputes delta'(w) from successors (stored deltas for untouched nodes),
    applies score deltas and refreshes the stored-dependency matrix.
    """
    c = counters if counters is not None else np.zeros(5, dtype=np.int64)
    bk = _Buckets(n)
    inb = np.zeros(n, dtype=np.int64)
    dnew = np.empty(n, dtype=np.float64)
    dmark = np.zeros(n, dtype=np.int64)
    epoch = 0
    for k in range(len(slist)):
        s = int(slist[k])
        epoch += 1
        maxlev = 0
        used = []
        drow = dist[s]
        srow = sigma[s]
        dlrow = delta_mat[s]
        for j in range(toff[k], toff[k + 1]):
            t = int(tflat[j])
            if inb[t] == epoch:
                continue
            inb[t] = epoch
            lev = bk.level_of(drow[t])
            bk.push(t, lev)
            used.append(lev)
            if lev > maxlev:
                maxlev = lev
            c[3] += 1
        lev = maxlev
        while lev >= 0:
            if bk.head[lev] < 0:
                lev -= 1
                continue
            w = bk.pop_at(lev)
            c[4] += 1
            c[0] += 1
            dw = drow[w]
            sw = srow[w]
            acc = 0.0
            if dw != INF:
                for e in range(op[w], op[w + 1]):
                    y = int(oi[e])
                    c[1] += 1
                    if drow[y] == dw + 1.0:
                        dy = dnew[y] if dmark[y] == epoch else dlrow[y]
                        acc += sw / srow[y] * (1.0 + dy)
            dnew[w] = acc
            dmark[w] = epoch
            scores[w] += acc - dlrow[w]
            dlrow[w] = acc
            if dw != INF:
                for e in range(ip[w], ip[w + 1]):
                    z = int(ii[e])
                    c[1] += 1
                    if z != s and drow[z] + 1.0 == dw:
                        if inb[z] != epoch:
                            inb[z] = epoch
                            zlev = bk.level_of(drow[z])
                            bk.push(z, zlev)
                            used.append(zlev)
                            c[3] += 1
        for lv in used:
            bk.head[lv] = -1

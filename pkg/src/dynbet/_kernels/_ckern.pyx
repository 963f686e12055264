# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels. Twin of ``pure.py``: same signatures, same traversal
orders, same tie-breaking, same floating-point operation order, so results
are bit-identical across backends. Keep the two files in lockstep."""

from libc.math cimport INFINITY, fabs, log2
from libcpp.vector cimport vector

import numpy as np

BACKEND = "compiled"

ctypedef long long i64
ctypedef double f64

cdef double TOL = 1e-9
cdef double INF = INFINITY

cdef i64 C_NODES = 0, C_EDGES = 1, C_SRC = 2, C_PQI = 3, C_PQE = 4

cdef int S_NOT = 0, S_EQUAL = 1, S_STRICT = 2


cdef inline bint _close(f64 a, f64 b) nogil:
    cdef f64 m = 1.0
    cdef f64 aa = fabs(a)
    cdef f64 bb = fabs(b)
    if aa > m:
        m = aa
    if bb > m:
        m = bb
    return fabs(a - b) <= TOL * m


cdef inline int _pair_state(f64 lhs, f64 base, f64 w) nogil:
    cdef f64 rhs
    if base == INF:
        return S_NOT
    rhs = base + w
    if lhs == INF:
        return S_STRICT
    if _close(lhs, rhs):
        return S_EQUAL
    if lhs > rhs:
        return S_STRICT
    return S_NOT


# -- deterministic heaps over (priority, node), node id breaks ties ----------


cdef inline void _hpush_min(vector[f64]& hp, vector[i64]& hn, f64 p, i64 x):
    cdef size_t i = hp.size()
    cdef size_t par
    hp.push_back(p)
    hn.push_back(x)
    while i > 0:
        par = (i - 1) >> 1
        if p < hp[par] or (p == hp[par] and x < hn[par]):
            hp[i] = hp[par]
            hn[i] = hn[par]
            i = par
        else:
            break
    hp[i] = p
    hn[i] = x


cdef inline i64 _hpop_min(vector[f64]& hp, vector[i64]& hn):
    cdef i64 top = hn[0]
    cdef size_t sz = hp.size() - 1
    cdef f64 p = hp[sz]
    cdef i64 x = hn[sz]
    cdef size_t i = 0, l, r, c
    hp.pop_back()
    hn.pop_back()
    if sz > 0:
        while True:
            l = 2 * i + 1
            if l >= sz:
                break
            r = l + 1
            c = l
            if r < sz and (hp[r] < hp[l] or (hp[r] == hp[l] and hn[r] < hn[l])):
                c = r
            if hp[c] < p or (hp[c] == p and hn[c] < x):
                hp[i] = hp[c]
                hn[i] = hn[c]
                i = c
            else:
                break
        hp[i] = p
        hn[i] = x
    return top


cdef inline void _hpush_max(vector[f64]& hp, vector[i64]& hn, f64 p, i64 x):
    cdef size_t i = hp.size()
    cdef size_t par
    hp.push_back(p)
    hn.push_back(x)
    while i > 0:
        par = (i - 1) >> 1
        if p > hp[par] or (p == hp[par] and x > hn[par]):
            hp[i] = hp[par]
            hn[i] = hn[par]
            i = par
        else:
            break
    hp[i] = p
    hn[i] = x


cdef inline i64 _hpop_max(vector[f64]& hp, vector[i64]& hn):
    cdef i64 top = hn[0]
    cdef size_t sz = hp.size() - 1
    cdef f64 p = hp[sz]
    cdef i64 x = hn[sz]
    cdef size_t i = 0, l, r, c
    hp.pop_back()
    hn.pop_back()
    if sz > 0:
        while True:
            l = 2 * i + 1
            if l >= sz:
                break
            r = l + 1
            c = l
            if r < sz and (hp[r] > hp[l] or (hp[r] == hp[l] and hn[r] > hn[l])):
                c = r
            if hp[c] > p or (hp[c] == p and hn[c] > x):
                hp[i] = hp[c]
                hn[i] = hn[c]
                i = c
            else:
                break
        hp[i] = p
        hn[i] = x
    return top


cdef object _vec_i64(vector[i64]& v):
    out = np.empty(v.size(), dtype=np.int64)
    cdef i64[::1] mv = out
    cdef size_t i
    for i in range(v.size()):
        mv[i] = v[i]
    return out


cdef object _vec_f64(vector[f64]& v):
    out = np.empty(v.size(), dtype=np.float64)
    cdef f64[::1] mv = out
    cdef size_t i
    for i in range(v.size()):
        mv[i] = v[i]
    return out


# -- static primitives --------------------------------------------------------


cdef i64 _sssp(i64[::1] op, i64[::1] oi, f64[::1] ow, i64 n, i64 src, bint unit,
               f64[::1] dist, f64[::1] sigma, i64[::1] order,
               i64[::1] q, unsigned char[::1] settled,
               vector[f64]& hp, vector[i64]& hn):
    cdef i64 cnt = 0, head = 0, tail = 0
    cdef i64 x, w, e
    cdef f64 dx, sx, cand, dw
    cdef i64 i
    for i in range(n):
        dist[i] = INF
        sigma[i] = 0.0
    dist[src] = 0.0
    sigma[src] = 1.0
    if unit:
        q[tail] = src
        tail += 1
        while head < tail:
            x = q[head]
            head += 1
            order[cnt] = x
            cnt += 1
            dx = dist[x]
            sx = sigma[x]
            for e in range(op[x], op[x + 1]):
                w = oi[e]
                if dist[w] == INF:
                    dist[w] = dx + 1.0
                    q[tail] = w
                    tail += 1
                if dist[w] == dx + 1.0:
                    sigma[w] += sx
        return cnt
    for i in range(n):
        settled[i] = 0
    _hpush_min(hp, hn, 0.0, src)
    while hp.size() > 0:
        x = _hpop_min(hp, hn)
        if settled[x]:
            continue
        settled[x] = 1
        dx = dist[x]
        order[cnt] = x
        cnt += 1
        sx = sigma[x]
        for e in range(op[x], op[x + 1]):
            w = oi[e]
            if settled[w]:
                continue
            cand = dx + ow[e]
            dw = dist[w]
            if dw == INF:
                dist[w] = cand
                sigma[w] = sx
                _hpush_min(hp, hn, cand, w)
            elif _close(cand, dw):
                sigma[w] += sx
            elif cand < dw:
                dist[w] = cand
                sigma[w] = sx
                _hpush_min(hp, hn, cand, w)
    return cnt


def sssp(i64[::1] op, i64[::1] oi, f64[::1] ow, n, src, unit,
         f64[::1] dist, f64[::1] sigma, i64[::1] order):
    cdef i64 nn = n
    q = np.empty(nn, dtype=np.int64)
    settled = np.zeros(nn, dtype=np.uint8)
    cdef vector[f64] hp
    cdef vector[i64] hn
    return _sssp(op, oi, ow, nn, src, unit, dist, sigma, order, q, settled, hp, hn)


cdef void _accumulate(i64[::1] ip, i64[::1] ii, f64[::1] iw, i64 n, i64 src,
                      f64[::1] dist, f64[::1] sigma, i64[::1] order, i64 cnt,
                      f64[::1] delta):
    cdef i64 k, w, e, y
    cdef f64 dw, g, dy
    for k in range(n):
        delta[k] = 0.0
    for k in range(cnt - 1, -1, -1):
        w = order[k]
        if w == src:
            continue
        dw = dist[w]
        g = (1.0 + delta[w]) / sigma[w]
        for e in range(ip[w], ip[w + 1]):
            y = ii[e]
            if y == src:
                continue
            dy = dist[y]
            if dy == INF:
                continue
            if _close(dy + iw[e], dw):
                delta[y] += sigma[y] * g


def accumulate(i64[::1] ip, i64[::1] ii, f64[::1] iw, n, src, unit,
               f64[::1] dist, f64[::1] sigma, i64[::1] order, cnt, f64[::1] delta):
    _accumulate(ip, ii, iw, n, src, dist, sigma, order, cnt, delta)


def static_pass(i64[::1] op, i64[::1] oi, f64[::1] ow,
                i64[::1] ip, i64[::1] ii, f64[::1] iw,
                n, unit, f64[::1] scores,
                dist_mat=None, sigma_mat=None, delta_mat=None):
    cdef i64 nn = n
    cdef bint uu = unit
    cdef bint own_rows = dist_mat is None
    cdef f64[:, ::1] dmat
    cdef f64[:, ::1] smat
    cdef f64[:, ::1] lmat
    cdef bint want_delta = delta_mat is not None
    cdef f64[::1] dist
    cdef f64[::1] sigma
    cdef f64[::1] delta
    cdef i64[::1] order
    cdef i64[::1] q
    cdef unsigned char[::1] settled
    cdef vector[f64] hp
    cdef vector[i64] hn
    cdef i64 s, v, cnt

    dist_buf = np.empty(nn, dtype=np.float64)
    sigma_buf = np.empty(nn, dtype=np.float64)
    delta_buf = np.empty(nn, dtype=np.float64)
    order_buf = np.empty(nn, dtype=np.int64)
    q_buf = np.empty(nn, dtype=np.int64)
    settled_buf = np.zeros(nn, dtype=np.uint8)
    delta = delta_buf
    order = order_buf
    q = q_buf
    settled = settled_buf
    if not own_rows:
        dmat = dist_mat
        smat = sigma_mat
    if want_delta:
        lmat = delta_mat
    for v in range(nn):
        scores[v] = 0.0
    for s in range(nn):
        if own_rows:
            dist = dist_buf
            sigma = sigma_buf
        else:
            dist = dmat[s]
            sigma = smat[s]
        cnt = _sssp(op, oi, ow, nn, s, uu, dist, sigma, order, q, settled, hp, hn)
        _accumulate(ip, ii, iw, nn, s, dist, sigma, order, cnt, delta)
        for v in range(nn):
            scores[v] += delta[v]
        if want_delta:
            for v in range(nn):
                lmat[s, v] = delta[v]


# -- incremental update: affected sets and staging ---------------------------


def affected_sources(i64[::1] ip, i64[::1] ii, f64[::1] iw, n, u, v, wnew,
                     f64[:, ::1] dist, counters):
    cdef i64 nn = n, uu = u, vv = v
    cdef f64 w = wnew
    cdef i64 c_nodes = 0, c_edges = 0, c_pqi = 0, c_pqe = 0
    cdef i64 head = 0, tail = 0, s, z, e
    tested_buf = np.zeros(nn, dtype=np.uint8)
    q_buf = np.empty(nn, dtype=np.int64)
    cdef unsigned char[::1] tested = tested_buf
    cdef i64[::1] q = q_buf
    cdef vector[i64] out
    cdef i64[::1] cc

    tested[uu] = 1
    if _pair_state(dist[uu, vv], dist[uu, uu], w) == S_NOT:
        return np.empty(0, dtype=np.int64)
    q[tail] = uu
    tail += 1
    out.push_back(uu)
    c_pqi += 1
    while head < tail:
        s = q[head]
        head += 1
        c_pqe += 1
        c_nodes += 1
        for e in range(ip[s], ip[s + 1]):
            z = ii[e]
            c_edges += 1
            if tested[z]:
                continue
            tested[z] = 1
            if _pair_state(dist[z, vv], dist[z, uu], w) != S_NOT:
                q[tail] = z
                tail += 1
                out.push_back(z)
                c_pqi += 1
    if counters is not None:
        cc = counters
        cc[C_NODES] += c_nodes
        cc[C_EDGES] += c_edges
        cc[C_PQI] += c_pqi
        cc[C_PQE] += c_pqe
    return _vec_i64(out)


def stage_update(i64[::1] op, i64[::1] oi, f64[::1] ow, n, u, v, wnew, unit,
                 f64[:, ::1] dist, f64[:, ::1] sigma, i64[::1] sources, counters):
    cdef i64 nn = n, uu = u, vv = v
    cdef f64 w = wnew
    cdef bint is_unit = unit
    cdef i64 c_nodes = 0, c_edges = 0, c_src = 0, c_pqi = 0, c_pqe = 0
    cdef i64 head = 0, tail = 0
    cdef i64 t, p, ti, e, wnode, s, j, lo, hi, k
    cdef f64 dvt, nd, ns
    cdef int state

    visited_buf = np.zeros(nn, dtype=np.uint8)
    pred_buf = np.full(nn, -1, dtype=np.int64)
    tpos_buf = np.full(nn, -1, dtype=np.int64)
    q_buf = np.empty(nn, dtype=np.int64)
    cdef unsigned char[::1] visited = visited_buf
    cdef i64[::1] pred = pred_buf
    cdef i64[::1] tpos = tpos_buf
    cdef i64[::1] q = q_buf
    cdef vector[i64] targets, preds_out, toff, tsrc
    cdef vector[f64] tnewd, tnews
    cdef vector[f64] hp
    cdef vector[i64] hn
    cdef i64[::1] cc

    toff.push_back(0)
    if is_unit:
        q[tail] = vv
        tail += 1
    else:
        _hpush_min(hp, hn, 0.0, vv)
    visited[vv] = 1
    pred[vv] = vv
    c_pqi += 1

    while True:
        if is_unit:
            if head >= tail:
                break
            t = q[head]
            head += 1
        else:
            if hp.size() == 0:
                break
            t = _hpop_min(hp, hn)
        c_pqe += 1
        c_nodes += 1
        ti = <i64>targets.size()
        p = pred[t]
        if p < 0:
            raise RuntimeError("traversal reached a target before any true predecessor")
        targets.push_back(t)
        preds_out.push_back(p)
        tpos[t] = ti
        dvt = dist[vv, t]
        if t == vv:
            lo = 0
            hi = <i64>sources.shape[0]
        else:
            j = tpos[p]
            lo = toff[j]
            hi = toff[j + 1]
        for k in range(lo, hi):
            if t == vv:
                s = sources[k]
            else:
                s = tsrc[k]
            c_src += 1
            state = _pair_state(dist[s, t], dist[s, uu] + dvt, w)
            if state == S_NOT:
                continue
            if state == S_STRICT:
                nd = dist[s, uu] + w + dvt
                ns = sigma[s, uu] * sigma[vv, t]
            else:
                nd = dist[s, t]
                ns = sigma[s, t] + sigma[s, uu] * sigma[vv, t]
            tsrc.push_back(s)
            tnewd.push_back(nd)
            tnews.push_back(ns)
        toff.push_back(<i64>tsrc.size())
        for e in range(op[t], op[t + 1]):
            wnode = oi[e]
            c_edges += 1
            if not visited[wnode]:
                if _pair_state(dist[uu, wnode], dist[vv, wnode], w) != S_NOT:
                    visited[wnode] = 1
                    if _close(dvt + ow[e], dist[vv, wnode]):
                        pred[wnode] = t
                    if is_unit:
                        q[tail] = wnode
                        tail += 1
                    else:
                        _hpush_min(hp, hn, dist[vv, wnode], wnode)
                    c_pqi += 1
            elif tpos[wnode] < 0 and _close(dvt + ow[e], dist[vv, wnode]):
                pred[wnode] = t
    if counters is not None:
        cc = counters
        cc[C_NODES] += c_nodes
        cc[C_EDGES] += c_edges
        cc[C_SRC] += c_src
        cc[C_PQI] += c_pqi
        cc[C_PQE] += c_pqe
    return (
        _vec_i64(targets),
        _vec_i64(preds_out),
        _vec_i64(toff),
        _vec_i64(tsrc),
        _vec_f64(tnewd),
        _vec_f64(tnews),
    )


# -- dependency updates -------------------------------------------------------


cdef void _dep_run(i64[::1] ip, i64[::1] ii, f64[::1] iw, i64 n, i64 s, bint unit,
                   f64[::1] dist_row, f64[::1] sigma_row, i64[::1] targets,
                   f64[::1] scores, f64 coeff, f64[::1] delta,
                   i64[::1] in_t_ep, i64[::1] inq_ep, i64 epoch,
                   i64[::1] bk_head, i64[::1] bk_nxt,
                   vector[f64]& hp, vector[i64]& hn, bint keep_delta,
                   i64* c_nodes, i64* c_edges, i64* c_pqi, i64* c_pqe):
    # delta must be all-zero on entry; unless keep_delta, entries are
    # re-zeroed as they are consumed so the buffer needs no O(n) reset.
    cdef i64 i, t, lev, maxlev, w, e, y
    cdef f64 dw, g, dy, dlw
    cdef i64 ntgt = <i64>targets.shape[0]
    if unit:
        maxlev = 0
        for i in range(ntgt):
            t = targets[i]
            in_t_ep[t] = epoch
            inq_ep[t] = epoch
            dw = dist_row[t]
            lev = n if dw == INF else <i64>dw
            if lev > maxlev:
                maxlev = lev
            bk_nxt[t] = bk_head[lev]
            bk_head[lev] = t
            c_pqi[0] += 1
        lev = maxlev
        while lev >= 0:
            if bk_head[lev] < 0:
                lev -= 1
                continue
            w = bk_head[lev]
            bk_head[lev] = bk_nxt[w]
            c_pqe[0] += 1
            c_nodes[0] += 1
            dlw = delta[w]
            scores[w] += coeff * dlw
            if not keep_delta:
                delta[w] = 0.0
            dw = dist_row[w]
            if dw == INF:
                continue
            if in_t_ep[w] == epoch:
                g = (1.0 + dlw) / sigma_row[w]
            else:
                g = dlw / sigma_row[w]
            for e in range(ip[w], ip[w + 1]):
                y = ii[e]
                c_edges[0] += 1
                if y == s:
                    continue
                dy = dist_row[y]
                if dy == INF:
                    continue
                if _close(dy + iw[e], dw):
                    if inq_ep[y] != epoch:
                        inq_ep[y] = epoch
                        bk_nxt[y] = bk_head[<i64>dy]
                        bk_head[<i64>dy] = y
                        c_pqi[0] += 1
                    delta[y] += sigma_row[y] * g
        return
    for i in range(ntgt):
        t = targets[i]
        in_t_ep[t] = epoch
        inq_ep[t] = epoch
        _hpush_max(hp, hn, dist_row[t], t)
        c_pqi[0] += 1
    while hp.size() > 0:
        w = _hpop_max(hp, hn)
        c_pqe[0] += 1
        c_nodes[0] += 1
        dlw = delta[w]
        scores[w] += coeff * dlw
        if not keep_delta:
            delta[w] = 0.0
        dw = dist_row[w]
        if dw == INF:
            continue
        if in_t_ep[w] == epoch:
            g = (1.0 + dlw) / sigma_row[w]
        else:
            g = dlw / sigma_row[w]
        for e in range(ip[w], ip[w + 1]):
            y = ii[e]
            c_edges[0] += 1
            if y == s:
                continue
            dy = dist_row[y]
            if dy == INF:
                continue
            if _close(dy + iw[e], dw):
                if inq_ep[y] != epoch:
                    inq_ep[y] = epoch
                    _hpush_max(hp, hn, dy, y)
                    c_pqi[0] += 1
                delta[y] += sigma_row[y] * g


def dep_pass(i64[::1] ip, i64[::1] ii, f64[::1] iw, n, s, unit,
             f64[::1] dist_row, f64[::1] sigma_row, i64[::1] targets,
             f64[::1] scores, coeff, f64[::1] delta, counters):
    cdef i64 nn = n
    cdef i64 c_nodes = 0, c_edges = 0, c_pqi = 0, c_pqe = 0
    cdef i64 i
    in_t_buf = np.zeros(nn, dtype=np.int64)
    inq_buf = np.zeros(nn, dtype=np.int64)
    head_buf = np.full(nn + 1, -1, dtype=np.int64)
    nxt_buf = np.empty(nn, dtype=np.int64)
    cdef vector[f64] hp
    cdef vector[i64] hn
    cdef i64[::1] cc
    for i in range(nn):
        delta[i] = 0.0
    _dep_run(ip, ii, iw, nn, s, unit, dist_row, sigma_row, targets, scores,
             coeff, delta, in_t_buf, inq_buf, 1, head_buf, nxt_buf, hp, hn, True,
             &c_nodes, &c_edges, &c_pqi, &c_pqe)
    if counters is not None:
        cc = counters
        cc[C_NODES] += c_nodes
        cc[C_EDGES] += c_edges
        cc[C_PQI] += c_pqi
        cc[C_PQE] += c_pqe


def dep_phase(i64[::1] ip, i64[::1] ii, f64[::1] iw, n, unit,
              f64[:, ::1] dist, f64[:, ::1] sigma, i64[::1] slist,
              i64[::1] tgt_off, i64[::1] tgt_flat, f64[::1] scores, coeff,
              counters):
    cdef i64 nn = n
    cdef f64 co = coeff
    cdef bint uu = unit
    cdef i64 c_nodes = 0, c_edges = 0, c_pqi = 0, c_pqe = 0
    cdef i64 k, s
    delta_buf = np.zeros(nn, dtype=np.float64)
    in_t_buf = np.zeros(nn, dtype=np.int64)
    inq_buf = np.zeros(nn, dtype=np.int64)
    head_buf = np.full(nn + 1, -1, dtype=np.int64)
    nxt_buf = np.empty(nn, dtype=np.int64)
    cdef f64[::1] delta = delta_buf
    cdef i64[::1] in_t_ep = in_t_buf
    cdef i64[::1] inq_ep = inq_buf
    cdef i64[::1] bk_head = head_buf
    cdef i64[::1] bk_nxt = nxt_buf
    cdef vector[f64] hp
    cdef vector[i64] hn
    cdef i64[::1] cc
    for k in range(slist.shape[0]):
        s = slist[k]
        _dep_run(ip, ii, iw, nn, s, uu, dist[s], sigma[s],
                 tgt_flat[tgt_off[k]:tgt_off[k + 1]], scores, co, delta,
                 in_t_ep, inq_ep, k + 1, bk_head, bk_nxt, hp, hn, False,
                 &c_nodes, &c_edges, &c_pqi, &c_pqe)
    if counters is not None:
        cc = counters
        cc[C_NODES] += c_nodes
        cc[C_EDGES] += c_edges
        cc[C_PQI] += c_pqi
        cc[C_PQE] += c_pqe


# -- KWCC baseline ------------------------------------------------------------


def kwcc_stage(i64[::1] op, i64[::1] oi, f64[::1] ow,
               i64[::1] ip, i64[::1] ii, f64[::1] iw,
               n, u, v, wnew, unit, f64[:, ::1] dist, f64[:, ::1] sigma,
               i64[::1] sources, counters):
    cdef i64 nn = n, uu = u, vv = v
    cdef f64 w = wnew
    cdef bint is_unit = unit
    cdef i64 c_nodes = 0, c_edges = 0, c_pqi = 0, c_pqe = 0
    cdef i64 si, s, head, tail, t, e, z, wnode, epoch = 0
    cdef f64 dsu, dvt, nd, ns, dz, sz
    cdef int state
    ov_d_buf = np.empty(nn, dtype=np.float64)
    ov_s_buf = np.empty(nn, dtype=np.float64)
    ov_mark_buf = np.zeros(nn, dtype=np.int64)
    visited_buf = np.zeros(nn, dtype=np.int64)
    q_buf = np.empty(nn, dtype=np.int64)
    cdef f64[::1] ov_d = ov_d_buf
    cdef f64[::1] ov_s = ov_s_buf
    cdef i64[::1] ov_mark = ov_mark_buf
    cdef i64[::1] visited = visited_buf
    cdef i64[::1] q = q_buf
    cdef vector[i64] ps, pt
    cdef vector[f64] pd, psg
    cdef vector[f64] hp
    cdef vector[i64] hn
    cdef i64[::1] cc

    for si in range(sources.shape[0]):
        s = sources[si]
        epoch += 1
        dsu = dist[s, uu]
        head = 0
        tail = 0
        if is_unit:
            q[tail] = vv
            tail += 1
        else:
            _hpush_min(hp, hn, 0.0, vv)
        visited[vv] = epoch
        c_pqi += 1
        while True:
            if is_unit:
                if head >= tail:
                    break
                t = q[head]
                head += 1
            else:
                if hp.size() == 0:
                    break
                t = _hpop_min(hp, hn)
            c_pqe += 1
            c_nodes += 1
            dvt = dist[vv, t]
            state = _pair_state(dist[s, t], dsu + dvt, w)
            if state == S_STRICT:
                nd = dsu + w + dvt
            else:
                nd = dist[s, t]
            ns = 0.0
            for e in range(ip[t], ip[t + 1]):
                z = ii[e]
                c_edges += 1
                if z == uu and t == vv:
                    continue
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
            if t == vv and _close(dsu + w, nd):
                ns += sigma[s, uu]
            ov_d[t] = nd
            ov_s[t] = ns
            ov_mark[t] = epoch
            ps.push_back(s)
            pt.push_back(t)
            pd.push_back(nd)
            psg.push_back(ns)
            for e in range(op[t], op[t + 1]):
                wnode = oi[e]
                c_edges += 1
                if visited[wnode] == epoch:
                    continue
                if _pair_state(dist[s, wnode], dsu + dist[vv, wnode], w) != S_NOT:
                    visited[wnode] = epoch
                    if is_unit:
                        q[tail] = wnode
                        tail += 1
                    else:
                        _hpush_min(hp, hn, dist[vv, wnode], wnode)
                    c_pqi += 1
    if counters is not None:
        cc = counters
        cc[C_NODES] += c_nodes
        cc[C_EDGES] += c_edges
        cc[C_PQI] += c_pqi
        cc[C_PQE] += c_pqe
    return _vec_i64(ps), _vec_i64(pt), _vec_f64(pd), _vec_f64(psg)


def kwcc_walk(i64[::1] ip, i64[::1] ii, f64[::1] iw, n, f64[:, ::1] dist,
              f64[:, ::1] sigma, i64[::1] pair_s, i64[::1] pair_t,
              f64[::1] scores, coeff, counters):
    cdef i64 nn = n
    cdef f64 co = coeff
    cdef i64 c_nodes = 0, c_edges = 0, c_pqi = 0, c_pqe = 0
    cdef i64 k, s, t, head, tail, y, e, z, epoch = 0
    cdef f64 sst, dst, dy, dz
    visited_buf = np.zeros(nn, dtype=np.int64)
    q_buf = np.empty(nn, dtype=np.int64)
    cdef i64[::1] visited = visited_buf
    cdef i64[::1] q = q_buf
    cdef i64[::1] cc

    for k in range(pair_s.shape[0]):
        s = pair_s[k]
        t = pair_t[k]
        sst = sigma[s, t]
        if sst == 0.0:
            continue
        dst = dist[s, t]
        epoch += 1
        head = 0
        tail = 0
        for e in range(ip[t], ip[t + 1]):
            y = ii[e]
            c_edges += 1
            if y == s:
                continue
            dy = dist[s, y]
            if dy == INF:
                continue
            if _close(dy + iw[e], dst) and visited[y] != epoch:
                visited[y] = epoch
                q[tail] = y
                tail += 1
                c_pqi += 1
        while head < tail:
            y = q[head]
            head += 1
            c_pqe += 1
            c_nodes += 1
            scores[y] += co * (sigma[s, y] * sigma[y, t] / sst)
            dy = dist[s, y]
            for e in range(ip[y], ip[y + 1]):
                z = ii[e]
                c_edges += 1
                if z == s:
                    continue
                dz = dist[s, z]
                if dz == INF:
                    continue
                if _close(dz + iw[e], dy) and visited[z] != epoch:
                    visited[z] = epoch
                    q[tail] = z
                    tail += 1
                    c_pqi += 1
    if counters is not None:
        cc = counters
        cc[C_NODES] += c_nodes
        cc[C_EDGES] += c_edges
        cc[C_PQI] += c_pqi
        cc[C_PQE] += c_pqe


# -- KDB baseline (unit weights) ----------------------------------------------


def kdb_phase1(i64[::1] op, i64[::1] oi, i64[::1] ip, i64[::1] ii, n, u, v,
               undirected, f64[:, ::1] dist, f64[:, ::1] sigma, counters):
    cdef i64 nn = n, uu = u, vv = v
    cdef bint und = undirected
    cdef i64 c_nodes = 0, c_edges = 0, c_pqi = 0, c_pqe = 0
    cdef i64 s, a, b, lev, lev0, x, y, z, e, t_new, touched_start, epoch = 0
    cdef f64 dsu, dsv, da, db, dx, nd, ns, dz, cand, dold, dy_old
    newp_buf = np.empty(nn, dtype=np.float64)
    mark_buf = np.zeros(nn, dtype=np.int64)
    tent_buf = np.empty(nn, dtype=np.int64)
    enq_buf = np.zeros(nn, dtype=np.int64)
    settled_buf = np.zeros(nn, dtype=np.int64)
    head_buf = np.full(nn + 1, -1, dtype=np.int64)
    nxt_buf = np.empty(nn, dtype=np.int64)
    cdef f64[::1] newp = newp_buf
    cdef i64[::1] mark = mark_buf
    cdef i64[::1] tent = tent_buf
    cdef i64[::1] enq = enq_buf
    cdef i64[::1] settled = settled_buf
    cdef i64[::1] bk_head = head_buf
    cdef i64[::1] bk_nxt = nxt_buf
    cdef vector[i64] slist, toff, tflat, used_levels
    cdef i64[::1] cc
    cdef size_t ul

    toff.push_back(0)
    for s in range(nn):
        c_nodes += 1
        dsu = dist[s, uu]
        dsv = dist[s, vv]
        if und and dsv < dsu:
            a = vv
            b = uu
            da = dsv
            db = dsu
        else:
            a = uu
            b = vv
            da = dsu
            db = dsv
        if da == INF or db - da <= 0:
            continue
        epoch += 1
        touched_start = <i64>tflat.size()
        used_levels.clear()
        if db - da == 1.0:
            newp[b] = sigma[s, a]
            mark[b] = epoch
            lev = <i64>dist[s, b]
            bk_nxt[b] = bk_head[lev]
            bk_head[lev] = b
            used_levels.push_back(lev)
            c_pqi += 1
            while lev <= nn:
                if bk_head[lev] < 0:
                    lev += 1
                    continue
                x = bk_head[lev]
                bk_head[lev] = bk_nxt[x]
                c_pqe += 1
                tflat.push_back(x)
                sigma[s, x] += newp[x]
                dx = dist[s, x]
                for e in range(op[x], op[x + 1]):
                    y = oi[e]
                    c_edges += 1
                    if dist[s, y] == dx + 1.0:
                        if mark[y] != epoch:
                            newp[y] = 0.0
                            mark[y] = epoch
                            lev0 = <i64>dist[s, y]
                            bk_nxt[y] = bk_head[lev0]
                            bk_head[lev0] = y
                            used_levels.push_back(lev0)
                            c_pqi += 1
                        newp[y] += newp[x]
        else:
            lev0 = <i64>da + 1
            tent[b] = lev0
            enq[b] = epoch
            bk_nxt[b] = bk_head[lev0]
            bk_head[lev0] = b
            used_levels.push_back(lev0)
            c_pqi += 1
            lev = lev0
            while lev <= nn:
                if bk_head[lev] < 0:
                    lev += 1
                    continue
                x = bk_head[lev]
                bk_head[lev] = bk_nxt[x]
                if settled[x] == epoch or tent[x] != lev:
                    continue
                settled[x] = epoch
                c_pqe += 1
                dold = dist[s, x]
                nd = INF
                ns = 0.0
                for e in range(ip[x], ip[x + 1]):
                    z = ii[e]
                    c_edges += 1
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
                    # orphaned old predecessors (directed graphs need this seed)
                    for e in range(ip[x], ip[x + 1]):
                        z = ii[e]
                        c_edges += 1
                        if settled[z] != epoch and mark[z] != epoch and dist[s, z] + 1.0 == dold:
                            mark[z] = epoch
                            tflat.push_back(z)
                dist[s, x] = nd
                sigma[s, x] = ns
                tflat.push_back(x)
                for e in range(op[x], op[x + 1]):
                    y = oi[e]
                    c_edges += 1
                    if settled[y] == epoch:
                        continue
                    dy_old = dist[s, y]
                    if dy_old >= nd:
                        if dy_old > nd + 1.0:
                            t_new = <i64>(nd + 1.0)
                        else:
                            t_new = <i64>dy_old
                        if enq[y] != epoch:
                            enq[y] = epoch
                            tent[y] = t_new
                            bk_nxt[y] = bk_head[t_new]
                            bk_head[t_new] = y
                            used_levels.push_back(t_new)
                            c_pqi += 1
                        elif t_new < tent[y]:
                            tent[y] = t_new
                            bk_nxt[y] = bk_head[t_new]
                            bk_head[t_new] = y
                            used_levels.push_back(t_new)
                            c_pqi += 1
        for ul in range(used_levels.size()):
            bk_head[used_levels[ul]] = -1
        if <i64>tflat.size() > touched_start:
            slist.push_back(s)
            toff.push_back(<i64>tflat.size())
    if counters is not None:
        cc = counters
        cc[C_NODES] += c_nodes
        cc[C_EDGES] += c_edges
        cc[C_PQI] += c_pqi
        cc[C_PQE] += c_pqe
    return _vec_i64(slist), _vec_i64(toff), _vec_i64(tflat)


def kdb_phase2(i64[::1] op, i64[::1] oi, i64[::1] ip, i64[::1] ii, n,
               i64[::1] slist, i64[::1] toff, i64[::1] tflat,
               f64[:, ::1] dist, f64[:, ::1] sigma, f64[:, ::1] delta_mat,
               f64[::1] scores, counters):
    cdef i64 nn = n
    cdef i64 c_nodes = 0, c_edges = 0, c_pqi = 0, c_pqe = 0
    cdef i64 k, s, j, t, lev, maxlev, w, e, y, z, zlev, epoch = 0
    cdef f64 dw, sw, acc, dy
    head_buf = np.full(nn + 1, -1, dtype=np.int64)
    nxt_buf = np.empty(nn, dtype=np.int64)
    inb_buf = np.zeros(nn, dtype=np.int64)
    dnew_buf = np.empty(nn, dtype=np.float64)
    dmark_buf = np.zeros(nn, dtype=np.int64)
    cdef i64[::1] bk_head = head_buf
    cdef i64[::1] bk_nxt = nxt_buf
    cdef i64[::1] inb = inb_buf
    cdef f64[::1] dnew = dnew_buf
    cdef i64[::1] dmark = dmark_buf
    cdef vector[i64] used
    cdef i64[::1] cc
    cdef size_t ul

    for k in range(slist.shape[0]):
        s = slist[k]
        epoch += 1
        maxlev = 0
        used.clear()
        for j in range(toff[k], toff[k + 1]):
            t = tflat[j]
            if inb[t] == epoch:
                continue
            inb[t] = epoch
            dw = dist[s, t]
            lev = nn if dw == INF else <i64>dw
            bk_nxt[t] = bk_head[lev]
            bk_head[lev] = t
            used.push_back(lev)
            if lev > maxlev:
                maxlev = lev
            c_pqi += 1
        lev = maxlev
        while lev >= 0:
            if bk_head[lev] < 0:
                lev -= 1
                continue
            w = bk_head[lev]
            bk_head[lev] = bk_nxt[w]
            c_pqe += 1
            c_nodes += 1
            dw = dist[s, w]
            sw = sigma[s, w]
            acc = 0.0
            if dw != INF:
                for e in range(op[w], op[w + 1]):
                    y = oi[e]
                    c_edges += 1
                    if dist[s, y] == dw + 1.0:
                        if dmark[y] == epoch:
                            dy = dnew[y]
                        else:
                            dy = delta_mat[s, y]
                        acc += sw / sigma[s, y] * (1.0 + dy)
            dnew[w] = acc
            dmark[w] = epoch
            scores[w] += acc - delta_mat[s, w]
            delta_mat[s, w] = acc
            if dw != INF:
                for e in range(ip[w], ip[w + 1]):
                    z = ii[e]
                    c_edges += 1
                    if z != s and dist[s, z] + 1.0 == dw:
                        if inb[z] != epoch:
                            inb[z] = epoch
                            zlev = nn if dist[s, z] == INF else <i64>dist[s, z]
                            bk_nxt[z] = bk_head[zlev]
                            bk_head[zlev] = z
                            used.push_back(zlev)
                            c_pqi += 1
        for ul in range(used.size()):
            bk_head[used[ul]] = -1
    if counters is not None:
        cc = counters
        cc[C_NODES] += c_nodes
        cc[C_EDGES] += c_edges
        cc[C_PQI] += c_pqi
        cc[C_PQE] += c_pqe

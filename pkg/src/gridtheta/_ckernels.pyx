# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled rectangle kernels and the interleaved nullity engine.

See ``_pykernels`` for the conventions; the engine mirrors
``nullity._interleaved`` choice for choice, so both give identical stats.
"""

from cpython.bytes cimport PyBytes_FromStringAndSize, PyBytes_AS_STRING
from libc.stdlib cimport malloc, free
from libc.string cimport memset, memcpy
from libc.stdint cimport uint64_t, int32_t
from libcpp.vector cimport vector
from libcpp.unordered_map cimport unordered_map
from libcpp.unordered_set cimport unordered_set
from libcpp.algorithm cimport sort as cpp_sort
cimport cython

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

BACKEND = "cython"


cdef inline int _mod(int a, int n) nogil:
    a %= n
    return a + n if a < 0 else a


cdef list _emit(const unsigned char* x, int n, int* pa, int* pb, int count):
    """Swap states for the found ordered pairs, dropping pairs found twice."""
    cdef list out = []
    cdef unsigned char* seen
    cdef int i, a, b, key
    cdef bytes y
    cdef char* buf
    if count == 0:
        return out
    seen = <unsigned char*> malloc(n * n)
    memset(seen, 0, n * n)
    for i in range(count):
        a = pa[i]
        b = pb[i]
        key = a * n + b if a < b else b * n + a
        seen[key] ^= 1
    for i in range(count):
        a = pa[i]
        b = pb[i]
        key = a * n + b if a < b else b * n + a
        if seen[key]:
            seen[key] = 0
            y = PyBytes_FromStringAndSize(<const char*> x, n)
            buf = PyBytes_AS_STRING(y)
            buf[a] = x[b]
            buf[b] = x[a]
            out.append(y)
    free(seen)
    return out


cdef int _boundary_pairs(const unsigned char* s, const unsigned char* xm,
                         const unsigned char* om, int n, int* pa, int* pb) nogil:
    cdef int count = 0
    cdef int ca, cb, w, ra, h, bound, t
    for ca in range(n):
        ra = s[ca]
        bound = _mod(xm[ca] - ra, n)
        t = _mod(om[ca] - ra, n)
        if t < bound:
            bound = t
        w = 1
        while bound > 0 and w < n:
            cb = ca + w
            if cb >= n:
                cb -= n
            h = _mod(s[cb] - ra, n)
            if h <= bound:
                pa[count] = ca
                pb[count] = cb
                count += 1
                bound = h
            t = _mod(xm[cb] - ra, n)
            if t < bound:
                bound = t
            t = _mod(om[cb] - ra, n)
            if t < bound:
                bound = t
            w += 1
    return count


cdef int _coboundary_pairs(const unsigned char* s, const unsigned char* xm,
                           const unsigned char* om, int n, int* pa, int* pb) nogil:
    cdef int count = 0
    cdef int ca, cb, w, top, h, bound, t
    for ca in range(n):
        top = s[ca]
        bound = _mod(top - 1 - xm[ca], n)
        t = _mod(top - 1 - om[ca], n)
        if t < bound:
            bound = t
        w = 1
        while bound > 0 and w < n:
            cb = ca + w
            if cb >= n:
                cb -= n
            h = _mod(top - s[cb], n)
            if h <= bound:
                pa[count] = ca
                pb[count] = cb
                count += 1
                bound = h
            t = _mod(top - 1 - xm[cb], n)
            if t < bound:
                bound = t
            t = _mod(top - 1 - om[cb], n)
            if t < bound:
                bound = t
            w += 1
    return count


cdef int _odd_pairs(int n, int* pa, int* pb, int count, unsigned char* seen) nogil:
    """Keep pairs of odd multiplicity, in first-seen order; ``seen`` is n*n zeroed scratch."""
    cdef int i, a, b, key, kept = 0
    for i in range(count):
        a = pa[i]
        b = pb[i]
        key = a * n + b if a < b else b * n + a
        seen[key] ^= 1
    for i in range(count):
        a = pa[i]
        b = pb[i]
        key = a * n + b if a < b else b * n + a
        if seen[key]:
            seen[key] = 0
            pa[kept] = a
            pb[kept] = b
            kept += 1
        else:
            seen[key] = 0
    return kept


def boundary(bytes x, bytes X, bytes O):
    cdef int n = len(x)
    cdef const unsigned char* s = <const unsigned char*> PyBytes_AS_STRING(x)
    cdef int* pa = <int*> malloc(n * n * sizeof(int))
    cdef int* pb = <int*> malloc(n * n * sizeof(int))
    cdef int count
    try:
        count = _boundary_pairs(s, <const unsigned char*> PyBytes_AS_STRING(X),
                                <const unsigned char*> PyBytes_AS_STRING(O), n, pa, pb)
        return _emit(s, n, pa, pb, count)
    finally:
        free(pa)
        free(pb)


def coboundary(bytes y, bytes X, bytes O):
    cdef int n = len(y)
    cdef const unsigned char* s = <const unsigned char*> PyBytes_AS_STRING(y)
    cdef int* pa = <int*> malloc(n * n * sizeof(int))
    cdef int* pb = <int*> malloc(n * n * sizeof(int))
    cdef int count
    try:
        count = _coboundary_pairs(s, <const unsigned char*> PyBytes_AS_STRING(X),
                                  <const unsigned char*> PyBytes_AS_STRING(O), n, pa, pb)
        return _emit(s, n, pa, pb, count)
    finally:
        free(pa)
        free(pb)


def boundary_k(bytes x, bytes X, bytes O, int k):
    cdef int n = len(x)
    cdef const unsigned char* s = <const unsigned char*> PyBytes_AS_STRING(x)
    cdef const unsigned char* xm = <const unsigned char*> PyBytes_AS_STRING(X)
    cdef const unsigned char* om = <const unsigned char*> PyBytes_AS_STRING(O)
    cdef int* pa = <int*> malloc(n * n * sizeof(int))
    cdef int* pb = <int*> malloc(n * n * sizeof(int))
    cdef int* xs = <int*> malloc(n * sizeof(int))
    cdef int count = 0
    cdef int ca, cb, w, ra, h, o_bound, s_bound, nx, j, inside
    for ca in range(n):
        ra = s[ca]
        o_bound = _mod(om[ca] - ra, n)
        s_bound = n
        xs[0] = _mod(xm[ca] - ra, n)
        nx = 1
        for w in range(1, n):
            cb = ca + w
            if cb >= n:
                cb -= n
            h = _mod(s[cb] - ra, n)
            if h <= o_bound and h <= s_bound:
                inside = 0
                for j in range(nx):
                    if xs[j] < h:
                        inside += 1
                if inside == k:
                    pa[count] = ca
                    pb[count] = cb
                    count += 1
            if h < s_bound:
                s_bound = h
            j = _mod(om[cb] - ra, n)
            if j < o_bound:
                o_bound = j
            if o_bound == 0:
                break
            xs[nx] = _mod(xm[cb] - ra, n)
            nx += 1
    try:
        return _emit(s, n, pa, pb, count)
    finally:
        free(pa)
        free(pb)
        free(xs)


cdef long _maslov(const unsigned char* s, const unsigned char* m, int n) nogil:
    cdef long total = 1
    cdef int i, j, c, si, mc
    for i in range(n):
        si = s[i]
        for j in range(i + 1, n):
            if si < s[j]:
                total += 1
            if m[i] < m[j]:
                total += 1
    for i in range(n):
        si = s[i]
        for c in range(n):
            mc = m[c]
            if i <= c:
                if si <= mc:
                    total -= 1
            elif mc < si:
                total -= 1
    return total


def maslov(bytes x, bytes M):
    return _maslov(<const unsigned char*> PyBytes_AS_STRING(x),
                   <const unsigned char*> PyBytes_AS_STRING(M), len(x))


cdef bint _next_perm(unsigned char* p, int n) nogil:
    cdef int i = n - 2
    cdef int j
    cdef unsigned char t
    while i >= 0 and p[i] >= p[i + 1]:
        i -= 1
    if i < 0:
        return False
    j = n - 1
    while p[j] <= p[i]:
        j -= 1
    t = p[i]; p[i] = p[j]; p[j] = t
    i += 1
    j = n - 1
    while i < j:
        t = p[i]; p[i] = p[j]; p[j] = t
        i += 1
        j -= 1
    return True


def states_in_grading(bytes M, long m):
    cdef int n = len(M)
    cdef const unsigned char* mk = <const unsigned char*> PyBytes_AS_STRING(M)
    cdef unsigned char p[256]
    cdef int i
    cdef list out = []
    for i in range(n):
        p[i] = i
    while True:
        if _maslov(p, mk, n) == m:
            out.append(PyBytes_FromStringAndSize(<char*> p, n))
        if not _next_perm(p, n):
            break
    return out


def grading_histogram(bytes M):
    cdef int n = len(M)
    cdef const unsigned char* mk = <const unsigned char*> PyBytes_AS_STRING(M)
    cdef unsigned char p[256]
    cdef int i
    cdef long v
    cdef dict hist = {}
    for i in range(n):
        p[i] = i
    while True:
        v = _maslov(p, mk, n)
        hist[v] = hist.get(v, 0) + 1
        if not _next_perm(p, n):
            break
    return hist


# ---------------------------------------------------------------- engine
#
# States are stored as their lexicographic rank among permutations, which
# fits in 64 bits up to n = 20 and orders exactly like the byte strings.

ENGINE_MAX_N = 20

cdef uint64_t FACT[21]
FACT[0] = 1
for _i in range(1, 21):
    FACT[_i] = FACT[_i - 1] * _i

cdef uint64_t DEAD = <uint64_t> -2
cdef uint64_t A0_KEY = <uint64_t> -1


cdef inline uint64_t _rank(const unsigned char* s, int n) nogil:
    cdef uint64_t unused = (<uint64_t> 1 << n) - 1
    cdef uint64_t r = 0
    cdef int i, v
    for i in range(n):
        v = s[i]
        r += <uint64_t> __builtin_popcountll(unused & ((<uint64_t> 1 << v) - 1)) * FACT[n - 1 - i]
        unused &= ~(<uint64_t> 1 << v)
    return r


cdef inline void _unrank(uint64_t r, int n, unsigned char* s) nogil:
    cdef uint64_t unused = (<uint64_t> 1 << n) - 1
    cdef uint64_t m, f, d
    cdef int i, v
    for i in range(n):
        f = FACT[n - 1 - i]
        d = r / f
        r -= d * f
        m = unused
        while d:
            m &= m - 1
            d -= 1
        v = __builtin_ctzll(m)
        s[i] = v
        unused &= ~(<uint64_t> 1 << v)


cdef struct _Ctx:
    int n
    const unsigned char* xm
    const unsigned char* om
    int* pa
    int* pb
    unsigned char* seen
    unsigned char* buf


cdef void _neighbours(_Ctx* c, uint64_t key, bint backward, vector[uint64_t]& out) nogil:
    cdef int n = c.n
    cdef int count, i, a, b
    cdef unsigned char t
    out.clear()
    _unrank(key, n, c.buf)
    if backward:
        count = _coboundary_pairs(c.buf, c.xm, c.om, n, c.pa, c.pb)
    else:
        count = _boundary_pairs(c.buf, c.xm, c.om, n, c.pa, c.pb)
    count = _odd_pairs(n, c.pa, c.pb, count, c.seen)
    for i in range(count):
        a = c.pa[i]
        b = c.pb[i]
        t = c.buf[a]; c.buf[a] = c.buf[b]; c.buf[b] = t
        out.push_back(_rank(c.buf, n))
        t = c.buf[a]; c.buf[a] = c.buf[b]; c.buf[b] = t


cdef inline void _remove(vector[int32_t]& v, int32_t x) nogil:
    cdef size_t i
    for i in range(v.size()):
        if v[i] == x:
            v[i] = v.back()
            v.pop_back()
            return


cdef class _Cone:
    """Columns and rows addressed by slot; rows also by state rank."""
    cdef vector[uint64_t] col_key
    cdef vector[vector[int32_t]] col_out
    cdef vector[int32_t] col_free
    cdef vector[uint64_t] row_key
    cdef vector[vector[int32_t]] row_inc
    cdef vector[int32_t] row_free
    cdef unordered_map[uint64_t, int32_t] row_of
    cdef long ncols
    cdef long nrows
    cdef vector[int32_t] rest
    cdef vector[int32_t] tmp
    cdef vector[int32_t] inc_b

    cdef int32_t new_col(self, uint64_t key):
        cdef int32_t i
        if self.col_free.size():
            i = self.col_free.back()
            self.col_free.pop_back()
            self.col_key[i] = key
        else:
            i = self.col_key.size()
            self.col_key.push_back(key)
            self.col_out.push_back(vector[int32_t]())
        self.ncols += 1
        return i

    cdef void free_col(self, int32_t i):
        self.col_key[i] = DEAD
        vector[int32_t]().swap(self.col_out[i])
        self.col_free.push_back(i)
        self.ncols -= 1

    cdef int32_t new_row(self, uint64_t key):
        cdef int32_t i
        if self.row_free.size():
            i = self.row_free.back()
            self.row_free.pop_back()
            self.row_key[i] = key
        else:
            i = self.row_key.size()
            self.row_key.push_back(key)
            self.row_inc.push_back(vector[int32_t]())
        self.row_of[key] = i
        self.nrows += 1
        return i

    cdef void free_row(self, int32_t i):
        self.row_of.erase(self.row_key[i])
        self.row_key[i] = DEAD
        vector[int32_t]().swap(self.row_inc[i])
        self.row_free.push_back(i)
        self.nrows -= 1

    cdef void contract(self, int32_t a, int32_t b):
        cdef size_t i, j, k, ni, nj
        cdef int32_t ap, r
        self.rest.clear()
        for k in range(self.col_out[a].size()):
            if self.col_out[a][k] != b:
                self.rest.push_back(self.col_out[a][k])
        self.inc_b = self.row_inc[b]
        nj = self.rest.size()
        for k in range(self.inc_b.size()):
            ap = self.inc_b[k]
            if ap == a:
                continue
            self.tmp.clear()
            ni = self.col_out[ap].size()
            i = 0
            j = 0
            while i < ni or j < nj:
                if j == nj or (i < ni and self.col_out[ap][i] < self.rest[j]):
                    r = self.col_out[ap][i]
                    if r != b:
                        self.tmp.push_back(r)
                    i += 1
                elif i == ni or self.rest[j] < self.col_out[ap][i]:
                    r = self.rest[j]
                    self.tmp.push_back(r)
                    self.row_inc[r].push_back(ap)
                    j += 1
                else:
                    _remove(self.row_inc[self.rest[j]], ap)
                    i += 1
                    j += 1
            self.col_out[ap].swap(self.tmp)
        for k in range(nj):
            _remove(self.row_inc[self.rest[k]], a)
        self.free_col(a)
        self.free_row(b)


def interleaved(bytes X, bytes O, list seed, long max_live=-1, progress=None):
    """Run the interleaved schedule on rank-encoded states.

    Returns ``(status, visited, layers, contractions, peak, live)`` where
    status is ``"Null"``, ``"NonNull"`` or ``"cap"``.
    """
    cdef int n = len(X)
    if n > ENGINE_MAX_N:
        raise ValueError(f"engine supports n <= {ENGINE_MAX_N}")
    cdef _Ctx c
    c.n = n
    c.xm = <const unsigned char*> PyBytes_AS_STRING(X)
    c.om = <const unsigned char*> PyBytes_AS_STRING(O)
    c.pa = <int*> malloc(n * n * sizeof(int))
    c.pb = <int*> malloc(n * n * sizeof(int))
    c.seen = <unsigned char*> malloc(n * n)
    c.buf = <unsigned char*> malloc(n)
    memset(c.seen, 0, n * n)
    cdef _Cone cone = _Cone()
    cdef unordered_set[uint64_t] prev_A, cur_A
    cdef vector[uint64_t] frontier, new_A, new_B, nb
    cdef long visited = 0, layers = 0, contractions = 0, peak = 0, live
    cdef size_t i, j
    cdef int32_t ci, ri, pivot
    cdef uint64_t key
    cdef size_t best_len
    cdef uint64_t best_key
    cdef unordered_map[uint64_t, int32_t].iterator it
    cdef bytes s
    status = None
    try:
        cone.new_col(A0_KEY)
        for s in seed:
            key = _rank(<const unsigned char*> PyBytes_AS_STRING(s), n)
            ri = cone.new_row(key)
            cone.row_inc[ri].push_back(0)
            cone.col_out[0].push_back(ri)
            frontier.push_back(key)
        cpp_sort(cone.col_out[0].begin(), cone.col_out[0].end())
        visited = frontier.size()
        while frontier.size():
            new_A.clear()
            cur_A.clear()
            for i in range(frontier.size()):
                _neighbours(&c, frontier[i], True, nb)
                for j in range(nb.size()):
                    key = nb[j]
                    if prev_A.count(key) == 0 and cur_A.count(key) == 0:
                        cur_A.insert(key)
                        new_A.push_back(key)
            new_B.clear()
            if new_A.size():
                layers += 1
                for i in range(new_A.size()):
                    ci = cone.new_col(new_A[i])
                    _neighbours(&c, new_A[i], False, nb)
                    for j in range(nb.size()):
                        it = cone.row_of.find(nb[j])
                        if it == cone.row_of.end():
                            ri = cone.new_row(nb[j])
                            new_B.push_back(nb[j])
                        else:
                            ri = cython.operator.dereference(it).second
                        cone.col_out[ci].push_back(ri)
                        cone.row_inc[ri].push_back(ci)
                    cpp_sort(cone.col_out[ci].begin(), cone.col_out[ci].end())
                visited += new_A.size() + new_B.size()
                live = cone.ncols + cone.nrows
                if live > peak:
                    peak = live
                if max_live >= 0 and live > max_live:
                    status = "cap"
                    break
            if progress is not None:
                progress(layers, new_A.size(), new_B.size(), cone.ncols + cone.nrows,
                         cone.col_out[0].size())
            cpp_sort(frontier.begin(), frontier.end())
            for i in range(frontier.size()):
                it = cone.row_of.find(frontier[i])
                if it == cone.row_of.end():
                    continue
                ri = cython.operator.dereference(it).second
                pivot = -1
                for j in range(cone.row_inc[ri].size()):
                    ci = cone.row_inc[ri][j]
                    if ci == 0:
                        continue
                    if (pivot < 0 or cone.col_out[ci].size() < best_len or
                            (cone.col_out[ci].size() == best_len and cone.col_key[ci] < best_key)):
                        pivot = ci
                        best_len = cone.col_out[ci].size()
                        best_key = cone.col_key[ci]
                if pivot >= 0:
                    cone.contract(pivot, ri)
                    contractions += 1
                elif cone.row_inc[ri].size():
                    status = "NonNull"
                    break
                else:
                    cone.free_row(ri)
                if cone.col_out[0].size() == 0:
                    status = "Null"
                    break
            if status is not None:
                break
            for i in range(1, cone.col_key.size()):
                if cone.col_key[i] != DEAD and cone.col_out[i].size() == 0:
                    cone.free_col(i)
            prev_A.swap(cur_A)
            frontier.swap(new_B)
        if status is None:
            status = "Null" if cone.col_out[0].size() == 0 else "NonNull"
        return status, visited, layers, contractions, peak, cone.ncols + cone.nrows
    finally:
        free(c.pa)
        free(c.pb)
        free(c.seen)
        free(c.buf)

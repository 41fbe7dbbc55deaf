# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels: closure under pairwise intersection, invariant-subset
sweeps and family-preservation checks on 64-bit atom masks.  Semantics
match seplat._kernels.pure exactly."""

from libc.stdint cimport uint64_t
from libc.stdlib cimport free, malloc
from libcpp.unordered_set cimport unordered_set
from libcpp.vector cimport vector

BACKEND = "compiled"


def close_under_intersection(seeds, universe):
    cdef vector[uint64_t] items
    cdef unordered_set[uint64_t] seen
    cdef uint64_t x, z
    cdef size_t i, j, bound
    for s in seeds:
        x = <uint64_t> s
        if seen.insert(x).second:
            items.push_back(x)
    x = <uint64_t> universe
    if seen.insert(x).second:
        items.push_back(x)
    i = 0
    while i < items.size():
        x = items[i]
        bound = items.size()
        j = 0
        while j < bound:
            z = x & items[j]
            if seen.insert(z).second:
                items.push_back(z)
            j += 1
        i += 1
    return sorted(items[k] for k in range(items.size()))


cdef int _low_bit_index(int v):
    cdef int k = 0
    while not (v & 1):
        v >>= 1
        k += 1
    return k


cdef uint64_t* _build_tables(list perms, int n_atoms, int n_chunks) except NULL:
    """Flat per-byte lookup tables: tables[(t*n_chunks + c)*256 + b] is the
    image of byte b at chunk c under permutation t."""
    cdef int n_perms = len(perms)
    cdef uint64_t* tables = <uint64_t*> malloc(
        <size_t> n_perms * n_chunks * 256 * sizeof(uint64_t))
    if tables == NULL:
        raise MemoryError()
    cdef int t, c, b, low, atom
    cdef uint64_t img
    cdef uint64_t* tab
    cdef int cperm[64]
    for t in range(n_perms):
        p = perms[t]
        for b in range(n_atoms):
            cperm[b] = p[b]
        for c in range(n_chunks):
            tab = tables + (<size_t> t * n_chunks + c) * 256
            tab[0] = 0
            for b in range(1, 256):
                low = b & (-b)
                atom = 8 * c + _low_bit_index(low)
                if atom < n_atoms:
                    img = (<uint64_t> 1) << cperm[atom]
                else:
                    img = 0
                tab[b] = tab[b ^ low] | img
    return tables


def invariant_subsets(perms, int n_atoms):
    if n_atoms >= 32:
        raise ValueError("exhaustive sweep limited to fewer than 32 atoms")
    nontrivial = [p for p in perms if any(p[k] != k for k in range(n_atoms))]
    cdef int n_perms = len(nontrivial)
    cdef int n_chunks = (n_atoms + 7) // 8
    out = []
    if n_perms == 0:
        return [a for a in range(1, 1 << n_atoms)]
    cdef uint64_t* tables = _build_tables(nontrivial, n_atoms, n_chunks)
    cdef uint64_t a, img, m, top, overlap
    cdef int t, c, ok
    cdef uint64_t* tab
    top = (<uint64_t> 1) << n_atoms
    try:
        a = 1
        while a < top:
            ok = 1
            for t in range(n_perms):
                img = 0
                m = a
                c = 0
                while m:
                    tab = tables + (<size_t> t * n_chunks + c) * 256
                    img |= tab[m & 0xFF]
                    m >>= 8
                    c += 1
                overlap = img & a
                if overlap != img and overlap != 0:
                    ok = 0
                    break
            if ok:
                out.append(a)
            a += 1
    finally:
        free(tables)
    return out


def family_preserved(perm, family, int n_atoms):
    cdef int n_chunks = (n_atoms + 7) // 8
    cdef uint64_t* tables = _build_tables([perm], n_atoms, n_chunks)
    cdef unordered_set[uint64_t] members
    cdef uint64_t x, img, m
    cdef int c
    for s in family:
        members.insert(<uint64_t> s)
    try:
        for s in family:
            m = <uint64_t> s
            img = 0
            c = 0
            while m:
                img |= tables[(<size_t> c) * 256 + (m & 0xFF)]
                m >>= 8
                c += 1
            if members.count(img) == 0:
                return False
    finally:
        free(tables)
    return True

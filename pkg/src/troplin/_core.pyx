# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled bitmask kernels.

Drop-in twin of troplin._core_py: same functions, same results, same
ordering.  Only the inner loops moved to C; anything observable (return
values, iteration order, raised exceptions on in-contract input) is
identical so the two backends can be swapped freely.
"""

from cpython.mem cimport PyMem_Free, PyMem_Malloc

BACKEND = "cython"


cdef inline int _bit_pos(unsigned int bit):
    cdef int p = 0
    while bit > 1:
        bit >>= 1
        p += 1
    return p


def exchange_violation(masks, n):
    """First failure of the basis-exchange axiom among the given bitmasks.

    Returns (A_mask, B_mask, a) with a 1-based, or None.  Matches the pure
    backend triple-for-triple.
    """
    cdef list mask_list = list(masks)
    cdef Py_ssize_t nb = len(mask_list)
    cdef int nn = n
    cdef Py_ssize_t i, j
    cdef unsigned int amask, bmask, cand, diff, abit, left, rem, bbit
    cdef bint found
    if nn < 0 or nn > 24:
        raise ValueError(f"ground set size out of range: {n}")
    cdef unsigned int full = ((<unsigned int> 1) << nn) - 1 if nn else 0
    cdef unsigned int* arr = <unsigned int*> PyMem_Malloc(
        (nb if nb else 1) * sizeof(unsigned int))
    cdef unsigned char* inset = <unsigned char*> PyMem_Malloc((<size_t> 1) << nn)
    if arr == NULL or inset == NULL:
        PyMem_Free(arr)
        PyMem_Free(inset)
        raise MemoryError()
    try:
        for i in range((<size_t> 1) << nn):
            inset[i] = 0
        for i in range(nb):
            amask = mask_list[i]
            if amask & ~full:
                raise ValueError(f"mask {mask_list[i]} has bits outside [{n}]")
            arr[i] = amask
            inset[amask] = 1
        for i in range(nb):
            amask = arr[i]
            for j in range(nb):
                bmask = arr[j]
                if amask == bmask:
                    continue
                cand = bmask & ~amask
                diff = amask & ~bmask
                while diff:
                    abit = diff & (~diff + 1)
                    diff ^= abit
                    left = amask ^ abit
                    rem = cand
                    found = False
                    while rem:
                        bbit = rem & (~rem + 1)
                        rem ^= bbit
                        if inset[left | bbit]:
                            found = True
                            break
                    if not found:
                        return (int(amask), int(bmask), _bit_pos(abit) + 1)
        return None
    finally:
        PyMem_Free(arr)
        PyMem_Free(inset)


cdef bint _augment(int u, int rows, unsigned int* adj, int* matched_right,
                   unsigned int* seen):
    cdef unsigned int avail = adj[u] & ~seen[0]
    cdef unsigned int bit
    cdef int pos, w
    while avail:
        bit = avail & (~avail + 1)
        avail ^= bit
        seen[0] |= bit
        pos = _bit_pos(bit)
        w = matched_right[pos]
        if w < 0 or _augment(w, rows, adj, matched_right, seen):
            matched_right[pos] = u
            return True
    return False


def transversal_basis_masks(n, m, b_mask, slot_elems, slot_masks):
    """Bases of the principal transversal structure rooted at B.

    Same contract as the pure backend: lexicographic subset order, masks as
    plain ints.
    """
    cdef int nn = n
    cdef int mm = m
    cdef unsigned int bmask = b_mask
    cdef Py_ssize_t nslots = len(slot_elems)
    cdef Py_ssize_t k
    cdef int i, j, u, e
    cdef unsigned int amask, free, need, bit, row
    cdef bint ok
    if len(slot_masks) != nslots:
        raise ValueError("slot_elems and slot_masks must align")
    if nn < 1 or nn > 24 or mm < 1 or mm > nn:
        raise ValueError(f"bad shape n={n}, m={m}")

    cdef int* slot_index = <int*> PyMem_Malloc((nn + 1) * sizeof(int))
    cdef unsigned int* smasks = <unsigned int*> PyMem_Malloc(
        (nslots if nslots else 1) * sizeof(unsigned int))
    cdef unsigned int* adj = <unsigned int*> PyMem_Malloc(mm * sizeof(unsigned int))
    cdef int* matched_right = <int*> PyMem_Malloc(nn * sizeof(int))
    cdef int* combo = <int*> PyMem_Malloc(mm * sizeof(int))
    if (slot_index == NULL or smasks == NULL or adj == NULL
            or matched_right == NULL or combo == NULL):
        PyMem_Free(slot_index)
        PyMem_Free(smasks)
        PyMem_Free(adj)
        PyMem_Free(matched_right)
        PyMem_Free(combo)
        raise MemoryError()

    out = []
    cdef unsigned int seen
    cdef int rows
    try:
        for i in range(nn + 1):
            slot_index[i] = -1
        for k in range(nslots):
            e = slot_elems[k]
            if e < 1 or e > nn:
                raise ValueError(f"slot element {slot_elems[k]} outside [{n}]")
            slot_index[e] = <int> k
            smasks[k] = slot_masks[k]

        for i in range(mm):
            combo[i] = i + 1
        while True:
            amask = 0
            for i in range(mm):
                amask |= (<unsigned int> 1) << (combo[i] - 1)

            # matching of A\B into B\A along the slot rows
            free = bmask & ~amask
            need = amask & ~bmask
            rows = 0
            ok = True
            while need:
                bit = need & (~need + 1)
                need ^= bit
                j = slot_index[_bit_pos(bit) + 1]
                if j < 0:
                    raise ValueError(
                        f"element {_bit_pos(bit) + 1} outside B has no slot")
                row = smasks[j] & free
                if row == 0:
                    ok = False
                    break
                adj[rows] = row
                rows += 1
            if ok:
                for i in range(nn):
                    matched_right[i] = -1
                for u in range(rows):
                    seen = 0
                    if not _augment(u, rows, adj, matched_right, &seen):
                        ok = False
                        break
            if ok:
                out.append(int(amask))

            # next combination in lexicographic order
            i = mm - 1
            while i >= 0 and combo[i] == nn - (mm - 1 - i):
                i -= 1
            if i < 0:
                break
            combo[i] += 1
            for j in range(i + 1, mm):
                combo[j] = combo[j - 1] + 1
        return out
    finally:
        PyMem_Free(slot_index)
        PyMem_Free(smasks)
        PyMem_Free(adj)
        PyMem_Free(matched_right)
        PyMem_Free(combo)

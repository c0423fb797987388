# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sequential monitor engine.

Same evaluation scheme as ``ltlsmc.monitor.actors`` with fifo dispatch,
working on integer message codes (0 false, 1 true, 2 waiting) instead of
message tuples.  The root property checker is a node of kind -1.
"""

from cpython.mem cimport PyMem_Free, PyMem_Malloc

cdef enum:
    K_ROOT = -1
    K_TRUE = 0
    K_ATOM = 1
    K_NOT = 2
    K_AND = 3
    K_NEXT = 4
    K_UNTIL = 5

cdef enum:
    C_FALSE = 0
    C_TRUE = 1
    C_WAIT = 2


cdef inline int _not3(int a) noexcept nogil:
    if a == C_WAIT:
        return C_WAIT
    return 1 - a


cdef inline int _and3(int a, int b) noexcept nogil:
    if a == C_FALSE or b == C_FALSE:
        return C_FALSE
    if a == C_TRUE and b == C_TRUE:
        return C_TRUE
    return C_WAIT


cdef inline int _or3(int a, int b) noexcept nogil:
    if a == C_TRUE or b == C_TRUE:
        return C_TRUE
    if a == C_FALSE and b == C_FALSE:
        return C_FALSE
    return C_WAIT


cdef class _Node:
    cdef int sid
    cdef int offset
    cdef int kind
    cdef int result
    cdef bint dead
    cdef int in0, in1, in2
    cdef _Node ch0, ch1, ch2
    cdef list parents  # flat: node, slot, node, slot, ...

    def __cinit__(self, int sid, int offset, int kind):
        self.sid = sid
        self.offset = offset
        self.kind = kind
        self.result = C_WAIT
        self.dead = False
        self.in0 = C_WAIT
        self.in1 = C_WAIT
        self.in2 = C_WAIT
        self.parents = []

    cdef inline void set_child(self, int slot, _Node child):
        if slot == 0:
            self.ch0 = child
        elif slot == 1:
            self.ch1 = child
        else:
            self.ch2 = child


cdef class Engine:
    """Monitor network over a compiled formula (see ``CompiledFormula``)."""

    cdef int n
    cdef int *kinds
    cdef int *arg0
    cdef int *arg1
    cdef int *canon
    cdef int n_atoms
    cdef bint share
    cdef readonly int index
    cdef readonly long created
    cdef _Node root
    cdef list atom_subs   # per atom: flat list node, slot, ...
    cdef list true_subs
    cdef list due
    cdef dict registry
    cdef list queue

    def __cinit__(self, compiled, bint share=True):
        cdef int i
        self.n = len(compiled.kinds)
        self.kinds = <int *> PyMem_Malloc(self.n * sizeof(int))
        self.arg0 = <int *> PyMem_Malloc(self.n * sizeof(int))
        self.arg1 = <int *> PyMem_Malloc(self.n * sizeof(int))
        self.canon = <int *> PyMem_Malloc(self.n * sizeof(int))
        if not self.kinds or not self.arg0 or not self.arg1 or not self.canon:
            raise MemoryError()
        for i in range(self.n):
            self.kinds[i] = compiled.kinds[i]
            self.arg0[i] = compiled.arg0[i]
            self.arg1[i] = compiled.arg1[i]
            self.canon[i] = compiled.canon[i]
        self.n_atoms = len(compiled.atoms)
        self.share = share
        self.reset()

    def __dealloc__(self):
        PyMem_Free(self.kinds)
        PyMem_Free(self.arg0)
        PyMem_Free(self.arg1)
        PyMem_Free(self.canon)

    def reset(self):
        self.atom_subs = [[] for _ in range(self.n_atoms)]
        self.true_subs = []
        self.due = []
        self.registry = {}
        self.queue = []
        self.index = 0
        self.created = 0
        self.root = _Node(-1, 0, K_ROOT)
        self._demand(0, self.root, 0)

    cdef void _demand(self, int sid, _Node parent, int slot) except *:
        cdef int kind = self.kinds[sid]
        cdef _Node worker = None
        cdef object key = None
        if kind == K_ATOM:
            parent.set_child(slot, None)
            subs = <list> self.atom_subs[self.arg0[sid]]
            subs.append(parent)
            subs.append(slot)
            return
        if kind == K_TRUE:
            parent.set_child(slot, None)
            self.true_subs.append(parent)
            self.true_subs.append(slot)
            return
        if self.share:
            key = (self.canon[sid], self.index)
            worker = <_Node> self.registry.get(key)
        if worker is None:
            worker = _Node(sid, self.index, kind)
            self.created += 1
            if self.share:
                self.registry[key] = worker
            if kind == K_NOT or kind == K_AND or kind == K_UNTIL:
                self._demand(self.arg0[sid], worker, 0)
            if kind == K_AND or kind == K_UNTIL:
                self._demand(self.arg1[sid], worker, 1)
            if kind == K_NEXT or kind == K_UNTIL:
                self.due.append(worker)
        worker.parents.append(parent)
        worker.parents.append(slot)
        parent.set_child(slot, worker)

    cdef inline void _emit(self, list subs, int code) except *:
        cdef Py_ssize_t i
        cdef list q = self.queue
        for i in range(len(subs)):
            q.append(subs[i])
            if i & 1:
                q.append(code)
        del subs[:]

    cdef void _deliver(self, _Node node, int slot, int code) except *:
        cdef int result
        cdef Py_ssize_t i
        cdef list parents
        if node.result != C_WAIT or node.dead:
            return
        if node.kind == K_ROOT:
            node.result = code
            return
        if slot == 0:
            node.in0 = code
        elif slot == 1:
            node.in1 = code
        else:
            node.in2 = code
        if node.kind == K_NOT:
            result = _not3(node.in0)
        elif node.kind == K_AND:
            result = _and3(node.in0, node.in1)
        elif node.kind == K_UNTIL:
            result = _or3(node.in1, _and3(node.in0, node.in2))
        else:
            result = C_WAIT
        if result == C_WAIT:
            return
        node.result = result
        parents = node.parents
        for i in range(0, len(parents), 2):
            self.queue.append(parents[i])
            self.queue.append(parents[i + 1])
            self.queue.append(result)

    cpdef int step(self, bits) except -1:
        """Process one state; ``bits[i]`` is the value of atom ``i``."""
        cdef Py_ssize_t head = 0
        cdef int a
        cdef list q
        if self.root.result != C_WAIT:
            self.index += 1
            return self.root.result
        self.queue = []
        for a in range(self.n_atoms):
            self._emit(<list> self.atom_subs[a], C_TRUE if bits[a] else C_FALSE)
        self._emit(self.true_subs, C_TRUE)
        q = self.queue
        while head < len(q):
            self._deliver(<_Node> q[head], <int> q[head + 1], <int> q[head + 2])
            head += 3
        self.queue = []
        self._barrier()
        return self.root.result

    cdef set _live(self):
        cdef set live = set()
        cdef list stack = []
        cdef _Node w
        if self.root.result != C_WAIT:
            return live
        if self.root.ch0 is not None:
            stack.append(self.root.ch0)
        while stack:
            w = <_Node> stack.pop()
            if w.dead or w.result != C_WAIT or w in live:
                continue
            live.add(w)
            if w.ch0 is not None:
                stack.append(w.ch0)
            if w.ch1 is not None:
                stack.append(w.ch1)
            if w.ch2 is not None:
                stack.append(w.ch2)
        return live

    cdef void _barrier(self) except *:
        cdef set live = self._live()
        cdef list due = self.due
        cdef list parents
        cdef _Node w, p
        cdef Py_ssize_t i
        self.due = []
        self.index += 1
        self.registry = {}
        for w in due:
            if w not in live:
                continue
            parents = []
            for i in range(0, len(w.parents), 2):
                p = <_Node> w.parents[i]
                if p is self.root or p in live:
                    parents.append(p)
                    parents.append(w.parents[i + 1])
            if w.kind == K_NEXT:
                w.dead = True
                for i in range(0, len(parents), 2):
                    self._demand(self.arg0[w.sid], <_Node> parents[i], <int> parents[i + 1])
            elif w.in0 == C_TRUE and w.in1 == C_FALSE:
                w.dead = True
                for i in range(0, len(parents), 2):
                    self._demand(w.sid, <_Node> parents[i], <int> parents[i + 1])
            else:
                self._demand(w.sid, w, 2)

    @property
    def root_code(self):
        return self.root.result

    def live_count(self):
        return len(self._live())

    def close(self):
        pass

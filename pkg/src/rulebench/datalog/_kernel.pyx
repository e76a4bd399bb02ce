# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled join-plan executor.

The plan-step contract is documented on _kernel_py.execute_plan; keep the
two implementations in lockstep. Positive sources are plain dicts (bucket
lists are never None), negated sources are sets, and a negated final step
never emits tuple-position head ops.
"""

COMPILED = True


cdef tuple _apply_ops(tuple ops, list env):
    cdef list parts = []
    cdef tuple op
    cdef object v
    for op in ops:
        v = op[1]
        if op[0]:
            parts.append(env[<Py_ssize_t> v])
        else:
            parts.append(v)
    return tuple(parts)


cdef tuple _head_tuple(tuple head_ops, list env, tuple tup):
    cdef list parts = []
    cdef tuple op
    cdef Py_ssize_t kind
    cdef object v
    for op in head_ops:
        kind = op[0]
        v = op[1]
        if kind == 1:
            parts.append(env[<Py_ssize_t> v])
        elif kind == 2:
            parts.append(tup[<Py_ssize_t> v])
        else:
            parts.append(v)
    return tuple(parts)


cdef bint _passes(tuple checks, tuple tup):
    cdef tuple c
    for c in checks:
        if tup[<Py_ssize_t> c[0]] != tup[<Py_ssize_t> c[1]]:
            return False
    return True


def execute_plan(Py_ssize_t nvars, tuple steps, list sources, tuple head_ops,
                 set existing, set out):
    """Run one rule plan, adding derived head tuples to `out`."""
    cdef Py_ssize_t added = 0
    cdef Py_ssize_t i, last
    cdef bint negated
    cdef tuple step, key_ops, out_ops, checks, neg_ops, tup, t, h, op
    cdef list envs, new_envs, env, env2, bucket
    cdef object bucket_obj
    cdef dict dsource
    cdef set nsource

    if len(steps) == 0:
        h = tuple([op[1] for op in head_ops])
        if h not in existing and h not in out:
            out.add(h)
            added = 1
        return added

    envs = [[None] * nvars]
    last = len(steps) - 1
    for i in range(last + 1):
        step = <tuple> steps[i]
        negated = step[0]
        key_ops = <tuple> step[1]
        out_ops = <tuple> step[2]
        checks = <tuple> step[3]
        neg_ops = <tuple> step[4]
        if negated:
            nsource = <set> sources[i]
            if i == last:
                for env in envs:
                    t = _apply_ops(neg_ops, env)
                    if t in nsource:
                        continue
                    h = _head_tuple(head_ops, env, None)
                    if h not in existing and h not in out:
                        out.add(h)
                        added += 1
                return added
            new_envs = []
            for env in envs:
                if _apply_ops(neg_ops, env) not in nsource:
                    new_envs.append(env)
            envs = new_envs
            if not envs:
                return added
        elif i == last:
            dsource = <dict> sources[i]
            for env in envs:
                bucket_obj = dsource.get(_apply_ops(key_ops, env))
                if bucket_obj is None:
                    continue
                bucket = <list> bucket_obj
                for tup in bucket:
                    if checks and not _passes(checks, tup):
                        continue
                    h = _head_tuple(head_ops, env, tup)
                    if h not in existing and h not in out:
                        out.add(h)
                        added += 1
            return added
        else:
            dsource = <dict> sources[i]
            new_envs = []
            for env in envs:
                bucket_obj = dsource.get(_apply_ops(key_ops, env))
                if bucket_obj is None:
                    continue
                bucket = <list> bucket_obj
                for tup in bucket:
                    if checks and not _passes(checks, tup):
                        continue
                    env2 = env.copy()
                    for op in out_ops:
                        env2[<Py_ssize_t> op[1]] = tup[<Py_ssize_t> op[0]]
                    new_envs.append(env2)
            envs = new_envs
            if not envs:
                return added
    return added

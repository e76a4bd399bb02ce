"""Pure-Python join-plan executor.

This is the hot inner loop of semi-naive evaluation. The compiled variant
in _kernel.pyx implements exactly the same contract; `kernel.py` picks one
at import time. Keep the two in lockstep.

A plan step is a 5-tuple:

  (negated, key_ops, out_ops, checks, neg_ops)

  key_ops:  ((is_slot, value), ...) builds the index key in position
            order; `value` is an env slot index when is_slot, else a
            constant. Empty key_ops means full scan (index key `()`).
  out_ops:  ((tuple_pos, env_slot), ...) bind new variables.
  checks:   ((tuple_pos, tuple_pos), ...) within-tuple equality for
            repeated new variables.
  neg_ops:  like key_ops but covering the full arity; only for negated
            steps, which test membership instead of joining.

`sources[i]` is a dict key->sequence for positive steps and a tuple set
for negated steps. Head emission is fused into the last step; `head_ops`
entries are (kind, value) with kind 0=constant, 1=env slot, 2=tuple
position of the final positive step.
"""

COMPILED = False


def execute_plan(nvars, steps, sources, head_ops, existing, out):
    """Run one rule plan, adding derived head tuples to `out`.

    Tuples already in `existing` or `out` are not re-added. Returns the
    number of tuples added.
    """
    added = 0
    if not steps:
        h = tuple(v for _, v in head_ops)
        if h not in existing and h not in out:
            out.add(h)
            added = 1
        return added

    envs = [[None] * nvars]
    last = len(steps) - 1
    for i, (negated, key_ops, out_ops, checks, neg_ops) in enumerate(steps):
        source = sources[i]
        if negated:
            if i == last:
                for env in envs:
                    t = tuple((env[v] if s else v) for s, v in neg_ops)
                    if t in source:
                        continue
                    h = tuple(
                        (env[v] if k == 1 else v) for k, v in head_ops
                    )
                    if h not in existing and h not in out:
                        out.add(h)
                        added += 1
                return added
            envs = [
                env
                for env in envs
                if tuple((env[v] if s else v) for s, v in neg_ops) not in source
            ]
            if not envs:
                return added
        elif i == last:
            for env in envs:
                key = tuple((env[v] if s else v) for s, v in key_ops)
                bucket = source.get(key)
                if not bucket:
                    continue
                for tup in bucket:
                    ok = True
                    for pa, pb in checks:
                        if tup[pa] != tup[pb]:
                            ok = False
                            break
                    if not ok:
                        continue
                    h = tuple(
                        (env[v] if k == 1 else tup[v] if k == 2 else v)
                        for k, v in head_ops
                    )
                    if h not in existing and h not in out:
                        out.add(h)
                        added += 1
            return added
        else:
            new_envs = []
            append = new_envs.append
            for env in envs:
                key = tuple((env[v] if s else v) for s, v in key_ops)
                bucket = source.get(key)
                if not bucket:
                    continue
                for tup in bucket:
                    ok = True
                    for pa, pb in checks:
                        if tup[pa] != tup[pb]:
                            ok = False
                            break
                    if not ok:
                        continue
                    env2 = env.copy()
                    for pos, slot in out_ops:
                        env2[slot] = tup[pos]
                    append(env2)
            envs = new_envs
            if not envs:
                return added
    return added

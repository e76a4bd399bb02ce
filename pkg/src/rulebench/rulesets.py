"""Canonical rule sets used by the benchmark suites.

Each source string is parsed once; callers share the resulting RuleSet
instance, which also keeps the compiled join plans cached. Body order
matters here: the *_rev/*_opt variants exist precisely because literals
join left-to-right in written order.
"""

from __future__ import annotations

from functools import cache

from .datalog import RuleSet, parse_rules

TRANS_SRC = """\
rules trans_rs:
  path(x,y) if edge(x,y)
  path(x,y) if edge(x,z), path(z,y)
"""

# recursive rule with the two hypotheses reversed
TRANS_REV_SRC = """\
rules trans_rev_rs:
  path(x,y) if edge(x,y)
  path(x,y) if path(z,y), edge(x,z)
"""

TRANS_ROLE_SRC = """\
rules trans_role_rs:
  path(x,y) if edge(x,y)
  path(x,y) if edge(x,z), path(z,y)
  path(x,x) if role(x)
"""

TRANS_RH_SRC = """\
rules transRH_rs:
  transRH(x,y) if RH(x,y)
  transRH(x,y) if RH(x,z), transRH(z,y)
  transRH(x,x) if ROLES(x)
"""

# first transRH_rs rule dropped; must derive the same closure
TRANS_RH_NO_BASE_SRC = """\
rules transRH_min_rs:
  transRH(x,y) if RH(x,z), transRH(z,y)
  transRH(x,x) if ROLES(x)
"""

WIN_SRC = "win(X) :- move(X, Y), not win(Y).\n"

SG_SRC = """\
rules sg_rs:
  sg(x,y) if par(x,p), par(y,p)
  sg(x,y) if par(x,p), sg(p,q), par(y,q)
"""

NONSG_SRC = """\
rules nonsg_rs:
  anc(x,y) if par(x,y)
  anc(x,y) if par(x,z), anc(z,y)
  nonsg(x,y) if anc(x,y)
  nonsg(x,y) if anc(y,x)
"""

# sg and nonsg plus the stratified set-difference rule
MODSG_SRC = """\
rules modsg_rs:
  sg(x,y) if par(x,p), par(y,p)
  sg(x,y) if par(x,p), sg(p,q), par(y,q)
  anc(x,y) if par(x,y)
  anc(x,y) if par(x,z), anc(z,y)
  nonsg(x,y) if anc(x,y)
  nonsg(x,y) if anc(y,x)
  sg2(x,y) if sg(x,y), not nonsg(x,y)
"""

CLASS_EXTENDS_SRC = """\
rules class_extends_rs:
  defined(c) if ClassDef(_,c,_, _,_,_)
  extending(c,b) if ClassDef(_,c,baselist, _,_,_),
                    Member(baselist,base,_), Name(base,b,_)
"""

DESC_SRC = """\
rules desc_rs:
  desc(c,r) if roots(r), extending(c,r)
  desc(c,r) if desc(b,r), extending(c,b)
"""

# recursive rule with the two hypotheses reversed
DESC_OPT_SRC = """\
rules desc_opt_rs:
  desc(c,r) if roots(r), extending(c,r)
  desc(c,r) if extending(c,b), desc(b,r)
"""


@cache
def trans_rs() -> RuleSet:
    return parse_rules(TRANS_SRC)


@cache
def trans_rev_rs() -> RuleSet:
    return parse_rules(TRANS_REV_SRC)


@cache
def trans_role_rs() -> RuleSet:
    return parse_rules(TRANS_ROLE_SRC)


@cache
def trans_rh_rs() -> RuleSet:
    return parse_rules(TRANS_RH_SRC)


@cache
def trans_rh_no_base_rs() -> RuleSet:
    return parse_rules(TRANS_RH_NO_BASE_SRC)


@cache
def win_rs() -> RuleSet:
    return parse_rules(WIN_SRC, name="win_rs")


@cache
def sg_rs() -> RuleSet:
    return parse_rules(SG_SRC)


@cache
def nonsg_rs() -> RuleSet:
    return parse_rules(NONSG_SRC)


@cache
def modsg_rs() -> RuleSet:
    return parse_rules(MODSG_SRC)


@cache
def class_extends_rs() -> RuleSet:
    return parse_rules(CLASS_EXTENDS_SRC)


@cache
def desc_rs() -> RuleSet:
    return parse_rules(DESC_SRC)


@cache
def desc_opt_rs() -> RuleSet:
    return parse_rules(DESC_OPT_SRC)

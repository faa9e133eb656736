"""qhorn query learning and verification workbench.

Queries are dicts in the JSON layout
``{"n": 6, "universals": [{"body": [1, 4], "head": 5}], "existentials": [[1, 2, 3]]}``
with 1-based variable numbers. Tuples are bitstrings whose first character is x1.
"""

import json

from . import _qhorn
from ._qhorn import QhornError

__all__ = [
    "QhornError",
    "SessionManager",
    "bench",
    "causal_density",
    "distinguishing_tuples",
    "equivalent",
    "equivalent_bruteforce",
    "evaluate",
    "gen_random",
    "is_qhorn1",
    "is_role_preserving",
    "learn",
    "mutate",
    "normalize",
    "shorthand",
    "verification_set",
    "verify",
]


def _dump(q):
    return q if isinstance(q, str) else json.dumps(q)


def evaluate(query, tuples):
    """True when the set of bitstring tuples is an answer of the query."""
    return _qhorn.evaluate(_dump(query), list(tuples))


def normalize(query):
    return json.loads(_qhorn.normalize(_dump(query)))


def shorthand(query):
    return _qhorn.shorthand(_dump(query))


def equivalent(a, b):
    return _qhorn.equivalent(_dump(a), _dump(b))


def equivalent_bruteforce(a, b):
    return _qhorn.equivalent_bruteforce(_dump(a), _dump(b))


def is_role_preserving(query):
    return _qhorn.is_role_preserving(_dump(query))


def is_qhorn1(query):
    return _qhorn.is_qhorn1(_dump(query))


def causal_density(query):
    return _qhorn.causal_density(_dump(query))


def distinguishing_tuples(query):
    """(existential tuples, universal tuples) of the normalized query."""
    ex, un = _qhorn.distinguishing_tuples(_dump(query))
    return ex, un


def learn(cls, target, theta_cap=3):
    """Learn `target` through a simulated oracle with the qhorn1 or rp learner."""
    return json.loads(_qhorn.learn(cls, _dump(target), theta_cap))


def verification_set(query, a3_fill="outside-false"):
    return json.loads(_qhorn.verification_set(_dump(query), a3_fill))


def verify(query, intended, a3_fill="outside-false"):
    return json.loads(_qhorn.verify(_dump(query), _dump(intended), a3_fill))


def gen_random(cls, n, k=4, theta=2, seed=1):
    return json.loads(_qhorn.gen_random(cls, n, k, theta, seed))


def mutate(query, seed):
    return json.loads(_qhorn.mutate(_dump(query), seed))


def bench(cls, n, k=4, theta=2, trials=10, seed=1):
    """Benchmark CSV text."""
    return _qhorn.bench(cls, n, k, theta, trials, seed)


class SessionManager:
    """Interactive sessions; mirrors the HTTP API."""

    def __init__(self, data_dir=None):
        self._m = _qhorn.SessionManager(None if data_dir is None else str(data_dir))

    def create(self, request):
        return json.loads(self._m.create(_dump(request)))

    def answer(self, session_id, answer):
        return json.loads(self._m.answer(session_id, bool(answer)))

    def rollback(self, session_id, to):
        return json.loads(self._m.rollback(session_id, to))

    def state(self, session_id):
        return json.loads(self._m.state(session_id))

    def transcript(self, session_id):
        return json.loads(self._m.transcript(session_id))

    def result(self, session_id):
        return json.loads(self._m.result(session_id))

    def ids(self):
        return list(self._m.ids())

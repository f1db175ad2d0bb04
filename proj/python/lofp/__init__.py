#
# Copyright 2026 The LOFP Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Light-cone path-sum simulation of shallow linear-optical circuits.

Fock states are plain sequences of occupation numbers, one per mode.
"""

from ._lofp import (
    Interferometer,
    ParseError,
    PreconditionError,
    ValidationError,
    amplitude,
    bs_amplitude,
    clements_mesh,
    distribution,
    output_states,
    permanent,
    resolve_method,
)

__all__ = [
    "Interferometer",
    "ParseError",
    "PreconditionError",
    "ValidationError",
    "amplitude",
    "bs_amplitude",
    "clements_mesh",
    "distribution",
    "output_states",
    "permanent",
    "resolve_method",
    "tvd",
]


def tvd(p, q):
    """Total variation distance between two distributions over the same outputs."""
    p, q = dict((tuple(s), w) for s, w in p), dict((tuple(s), w) for s, w in q)
    if p.keys() != q.keys():
        raise ValueError("distributions are over different output sets")
    return 0.5 * sum(abs(p[s] - q[s]) for s in p)

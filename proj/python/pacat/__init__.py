# Copyright 2026 The pacat Authors
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
"""Photon-added squeezed states and optical cat states in a truncated Fock basis."""

import json as _json

from ._pacat import *  # noqa: F401,F403
from ._pacat import simulate as _simulate

__version__ = "0.1.0"


def simulate(config):
    """Run a pipeline config given as a dict or a JSON string."""
    if not isinstance(config, str):
        config = _json.dumps(config)
    return _simulate(config)

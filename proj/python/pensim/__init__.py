# Copyright 2026 The pensim Authors
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

"""Davies-Lindblad simulation of penalty-protected adiabatic dynamics."""

from pensim._core import (
    ConfigError,
    NumericError,
    ResourceError,
    RunConfig,
    StabilizerCode,
    ValidationError,
    build_code,
    default_config,
    load_config,
    parse_config,
    penalty_gap,
    run,
    spectral_rate,
    sweep,
    verify,
)

__all__ = [
    "ConfigError",
    "NumericError",
    "ResourceError",
    "RunConfig",
    "StabilizerCode",
    "ValidationError",
    "build_code",
    "default_config",
    "load_config",
    "parse_config",
    "penalty_gap",
    "run",
    "spectral_rate",
    "sweep",
    "verify",
]

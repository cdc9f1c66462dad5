# Copyright 2026 The Clipnest Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Hierarchical web clipping store."""

from clipnest._core import (
    ClipnestError,
    Service,
    corpus_report_from_snapshots,
    iou,
    resolve_region,
    word_count,
)

# ClipnestError args are (code, message, current_revision).
ClipnestError.code = property(lambda self: self.args[0])
ClipnestError.message = property(lambda self: self.args[1])
ClipnestError.current_revision = property(lambda self: self.args[2])
ClipnestError.__str__ = lambda self: f"{self.args[0]}: {self.args[1]}"

__all__ = [
    "ClipnestError",
    "Service",
    "corpus_report_from_snapshots",
    "iou",
    "resolve_region",
    "word_count",
]

#
# Copyright 2026 The SIFL Authors
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
#

"""Writes the golden wire-format frames under tests/fixtures/wire.

Frames are built with struct.pack from the documented layout, independently of
the C++ encoder: u32 body length, u8 tag, u32 round, u32 client id, u32 rows,
u32 cols, row-major f64 payload, and a trailing u64 dataset size on local
updates. All integers and floats are little-endian.
"""

import os
import struct
import sys

FIXTURES = [
    # name, tag, round, client, rows, cols, values, dataset_size
    ("broadcast_plain", 1, 3, 0, 3, 1, [1.5, -2.25, 0.1], None),
    ("broadcast_encoded", 2, 4, 0, 5, 1, [0.0, -0.0, 1e-300, 6.02214076e23, -7.125], None),
    ("broadcast_doubly_encoded", 3, 2, 0, 3, 2, [1.0, 2.0, 3.0, 4.0, 5.0, 6.0], None),
    ("local_update", 4, 7, 5, 4, 1, [0.25, -0.5, 0.75, -1.0], 6000),
    ("aggregate", 5, 1, 0, 2, 3, [1.0 / 3.0, 2.0 / 3.0, -1.0, 1e-9, 1e9, 3.5], None),
    ("done", 6, 20, 0, 2, 1, [3.141592653589793, 2.718281828459045], None),
]


def frame(tag, rnd, client, rows, cols, values, dataset_size):
    body = struct.pack("<BIIII", tag, rnd, client, rows, cols)
    body += struct.pack("<%dd" % len(values), *values)
    if dataset_size is not None:
        body += struct.pack("<Q", dataset_size)
    return struct.pack("<I", len(body)) + body


def main():
    out_dir = sys.argv[1] if len(sys.argv) > 1 else os.path.join(
        os.path.dirname(__file__), "..", "tests", "fixtures", "wire")
    os.makedirs(out_dir, exist_ok=True)
    for name, *fields in FIXTURES:
        with open(os.path.join(out_dir, name + ".bin"), "wb") as f:
            f.write(frame(*fields))


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
# Copyright 2026 The ngramsent Authors
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
"""Generates core/src/unicode_lower.inc (Unicode simple lowercase mapping).

Runs of code points sharing a constant delta (or alternating upper/lower
pairs) are folded into ranges. Usage: gen_unicode_lower.py > unicode_lower.inc
"""

import sys
import unicodedata


def simple_lower(cp):
    ch = chr(cp)
    low = ch.lower()
    if len(low) == 1:
        return ord(low)
    # Only U+0130 has a multi-character full mapping; its simple mapping is 'i'.
    if cp == 0x130:
        return 0x69
    return cp


def main():
    mapping = []
    for cp in range(0x110000):
        if 0xD800 <= cp <= 0xDFFF:
            continue
        low = simple_lower(cp)
        if low != cp:
            mapping.append((cp, low))

    # Each range: (first, last, stride, delta). Every cp = first + k*stride maps to cp + delta.
    ranges = []
    for cp, low in mapping:
        delta = low - cp
        if ranges:
            first, last, stride, d = ranges[-1]
            if d == delta:
                if first == last and cp - last in (1, 2):
                    ranges[-1] = (first, cp, cp - last, d)
                    continue
                if first != last and cp - last == stride:
                    ranges[-1] = (first, cp, stride, d)
                    continue
        ranges.append((cp, cp, 1, delta))

    for cp, low in mapping:
        assert simple_lower(low) == low, hex(cp)

    out = sys.stdout
    out.write("// Generated by tools/gen_unicode_lower.py from Unicode %s. Do not edit.\n"
              % unicodedata.unidata_version)
    out.write("// {first, last, stride, delta}\n")
    for first, last, stride, delta in ranges:
        out.write("{0x%04X, 0x%04X, %d, %d},\n" % (first, last, stride, delta))


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
# Copyright 2026 The entlink Authors
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

"""Generates src/unicode_tables.inc.

Folding: canonical decomposition, drop combining marks, lowercase, repeated
until a fixed point. Only code points whose fold differs from themselves are
emitted. Also emits whitespace and punctuation ranges for the tokenizer.
"""

import sys
import unicodedata

MAX_CP = 0x30000


def fold(s):
    while True:
        d = unicodedata.normalize("NFD", s)
        d = "".join(c for c in d if unicodedata.combining(c) == 0)
        d = d.lower()
        if d == s:
            return d
        s = d


def ranges(pred):
    out = []
    start = None
    for cp in range(MAX_CP + 1):
        if 0xD800 <= cp <= 0xDFFF:
            ok = False
        else:
            ok = pred(cp)
        if ok and start is None:
            start = cp
        elif not ok and start is not None:
            out.append((start, cp - 1))
            start = None
    if start is not None:
        out.append((start, MAX_CP))
    return out


def c_escape(s):
    return "".join("\\x%02x" % b for b in s.encode("utf-8"))


def main():
    folds = []
    for cp in range(MAX_CP + 1):
        if 0xD800 <= cp <= 0xDFFF:
            continue
        c = chr(cp)
        f = fold(c)
        if f != c:
            assert fold(f) == f
            folds.append((cp, f))

    def is_space(cp):
        return chr(cp) in "\t\n\v\f\r" or unicodedata.category(chr(cp)).startswith("Z")

    def is_punct(cp):
        cat = unicodedata.category(chr(cp))
        return cat.startswith("P") or cat.startswith("S")

    out = sys.stdout
    out.write("// Generated by tools/gen_unicode_tables.py (Unicode %s). Do not edit.\n\n"
              % unicodedata.unidata_version)
    out.write("constexpr FoldEntry kFoldTable[] = {\n")
    for cp, f in folds:
        out.write('    {0x%04X, "%s"},\n' % (cp, c_escape(f)))
    out.write("};\n\n")
    for name, pred in (("kSpaceRanges", is_space), ("kPunctRanges", is_punct)):
        out.write("constexpr CodeRange %s[] = {\n" % name)
        for lo, hi in ranges(pred):
            out.write("    {0x%04X, 0x%04X},\n" % (lo, hi))
        out.write("};\n\n")


if __name__ == "__main__":
    main()

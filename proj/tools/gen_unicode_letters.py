#!/usr/bin/env python3
"""Regenerates core/src/unicode_letters.inc: code point ranges of general category L*."""
import sys
import unicodedata

ranges = []
start = None
for cp in range(0x110000):
    is_letter = unicodedata.category(chr(cp)).startswith("L")
    if is_letter and start is None:
        start = cp
    elif not is_letter and start is not None:
        ranges.append((start, cp - 1))
        start = None
if start is not None:
    ranges.append((start, 0x10FFFF))

out = sys.stdout if len(sys.argv) < 2 else open(sys.argv[1], "w", encoding="ascii")
out.write(f"// Generated by tools/gen_unicode_letters.py (Unicode {unicodedata.unidata_version}). Do not edit.\n")
out.write(f"// {len(ranges)} inclusive ranges of general category L.\n")
for lo, hi in ranges:
    out.write(f"{{0x{lo:04X}, 0x{hi:04X}}},\n")

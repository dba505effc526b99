import unicodedata, sys

decomp = {}   # cp -> full canonical decomposition (list of cps)
ccc = {}      # cp -> combining class (nonzero only)
comp = []     # (starter, combiner) -> composed

def full_decomp(cp):
    s = unicodedata.normalize('NFD', chr(cp))
    return [ord(c) for c in s]

for cp in range(0x110000):
    if 0xD800 <= cp <= 0xDFFF:
        continue
    ch = chr(cp)
    c = unicodedata.combining(ch)
    if c:
        ccc[cp] = c
    # skip Hangul syllables (algorithmic)
    if 0xAC00 <= cp <= 0xD7A3:
        continue
    d = full_decomp(cp)
    if d != [cp]:
        decomp[cp] = d
    # composition pairs: canonical 2-char decomp that recomposes
    raw = unicodedata.decomposition(ch)
    if raw and not raw.startswith('<'):
        parts = [int(x, 16) for x in raw.split()]
        if len(parts) == 2:
            if unicodedata.normalize('NFC', ''.join(chr(p) for p in parts)) == ch:
                comp.append((parts[0], parts[1], cp))

# flatten decompositions
seq = []
dent = []
for cp in sorted(decomp):
    d = decomp[cp]
    dent.append((cp, len(seq), len(d)))
    seq.extend(d)

comp.sort()

with open('/root/proj/src/nfc_tables.inc', 'w') as f:
    f.write('// Generated canonical normalization tables (Unicode %s).\n' % unicodedata.unidata_version)
    f.write('// Regenerate with scripts/gen_nfc_tables.py.\n\n')
    f.write('struct DecompEntry { char32_t cp; uint32_t offset; uint32_t len; };\n')
    f.write('struct CompEntry { char32_t first; char32_t second; char32_t composed; };\n')
    f.write('struct CccEntry { char32_t cp; uint8_t ccc; };\n\n')
    f.write('static const DecompEntry kDecomp[] = {\n')
    for cp, off, ln in dent:
        f.write('  {0x%X,%d,%d},\n' % (cp, off, ln))
    f.write('};\n\n')
    f.write('static const char32_t kDecompSeq[] = {\n')
    for i in range(0, len(seq), 12):
        f.write('  ' + ','.join('0x%X' % c for c in seq[i:i+12]) + ',\n')
    f.write('};\n\n')
    f.write('static const CompEntry kComp[] = {\n')
    for a, b, c in comp:
        f.write('  {0x%X,0x%X,0x%X},\n' % (a, b, c))
    f.write('};\n\n')
    f.write('static const CccEntry kCcc[] = {\n')
    for cp in sorted(ccc):
        f.write('  {0x%X,%d},\n' % (cp, ccc[cp]))
    f.write('};\n')

print('decomp entries', len(dent), 'seq', len(seq), 'comp', len(comp), 'ccc', len(ccc))

"""Writes icosphere3.ply: a level-3 subdivided icosahedron (unit radius).

Independent of the C++ primitives; used to check the PLY loader's counts.
"""
import math

t = (1 + 5 ** 0.5) / 2
verts = [(-1, t, 0), (1, t, 0), (-1, -t, 0), (1, -t, 0), (0, -1, t), (0, 1, t),
         (0, -1, -t), (0, 1, -t), (t, 0, -1), (t, 0, 1), (-t, 0, -1), (-t, 0, 1)]
faces = [(0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11), (1, 5, 9), (5, 11, 4),
         (11, 10, 2), (10, 7, 6), (7, 1, 8), (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8),
         (3, 8, 9), (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1)]


def unit(p):
    n = math.sqrt(sum(c * c for c in p))
    return tuple(c / n for c in p)


verts = [unit(v) for v in verts]
for _ in range(3):
    cache = {}

    def mid(a, b):
        key = (min(a, b), max(a, b))
        if key not in cache:
            verts.append(unit(tuple((x + y) / 2 for x, y in zip(verts[a], verts[b]))))
            cache[key] = len(verts) - 1
        return cache[key]

    nxt = []
    for a, b, c in faces:
        ab, bc, ca = mid(a, b), mid(b, c), mid(c, a)
        nxt += [(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)]
    faces = nxt

with open("icosphere3.ply", "w") as f:
    f.write("ply\nformat ascii 1.0\ncomment generated by gen_icosphere.py\n")
    f.write(f"element vertex {len(verts)}\nproperty float x\nproperty float y\nproperty float z\n")
    f.write(f"element face {len(faces)}\nproperty list uchar int vertex_indices\nend_header\n")
    for v in verts:
        f.write("%.9f %.9f %.9f\n" % v)
    for a, b, c in faces:
        f.write(f"3 {a} {b} {c}\n")
print(len(verts), len(faces))

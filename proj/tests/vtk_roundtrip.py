"""Reads a VTK file written by the CLI with meshio and compares it with the raw text."""
import subprocess
import sys
import tempfile
from pathlib import Path

import meshio
import numpy as np


def raw_block(lines, header, count, width):
    start = next(i for i, l in enumerate(lines) if l.startswith(header))
    skip = 2 if header.startswith("SCALARS") else 1
    rows = lines[start + skip:start + skip + count]
    return np.array([[float(x) for x in r.split()] for r in rows]).reshape(count, width)


def main(cli):
    with tempfile.TemporaryDirectory() as tmp:
        subprocess.run([cli, "run-transient", "--scenario", "academic-bars", "--steps", "6",
                        "--out", tmp], check=True, stdout=subprocess.DEVNULL)
        path = Path(tmp) / "vtk" / "step_0005.vtk"
        mesh = meshio.read(path)
        lines = path.read_text().splitlines()

    n_pts = len(mesh.points)
    n_cells = len(mesh.cells_dict["tetra"])
    assert mesh.cells_dict.keys() == {"tetra"}, mesh.cells_dict.keys()
    assert np.array_equal(mesh.points, raw_block(lines, "POINTS", n_pts, 3))
    assert np.array_equal(mesh.point_data["phi"].reshape(-1, 1),
                          raw_block(lines, "SCALARS phi", n_pts, 1))
    for name in ("B", "D_e", "E", "J"):
        got = mesh.cell_data[name][0]
        assert np.array_equal(got, raw_block(lines, "VECTORS " + name, n_cells, 3)), name
    assert np.abs(mesh.point_data["phi"]).max() > 0.0
    print(f"meshio read {n_pts} points, {n_cells} tets; values match")


if __name__ == "__main__":
    main(sys.argv[1])

# Runs `markov-twist figure` for both graphs and checks the SVG parses as XML
# with one circle per CSV row (plus the highlighted marks).
import csv
import os
import subprocess
import sys
import xml.etree.ElementTree as ET

exe = os.environ["MARKOV_TWIST"]
out = os.environ["OUT_DIR"]
SVG = "{http://www.w3.org/2000/svg}"

for which in ("geom", "farey"):
    svg_path = os.path.join(out, f"figure_{which}.svg")
    csv_path = os.path.join(out, f"figure_{which}.csv")
    subprocess.run([exe, "figure", "--qmax", "60", "--which", which, "--svg", svg_path, "--out", csv_path],
                   check=True)
    root = ET.parse(svg_path).getroot()
    if root.tag != SVG + "svg":
        sys.exit(f"{which}: root element is {root.tag}")
    circles = list(root.iter(SVG + "circle"))
    points = [c for c in circles if c.get("class") == "pt"]
    with open(csv_path, newline="") as f:
        rows = list(csv.DictReader(f))
    if len(points) != len(rows):
        sys.exit(f"{which}: {len(points)} circles for {len(rows)} rows")
    for row in rows:
        y = float(row["y"])
        if not 0.0 <= y <= 1.0:
            sys.exit(f"{which}: y out of range in {row}")
    print(f"{which}: {len(points)} points, well-formed")

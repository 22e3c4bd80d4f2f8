"""Minimal SVG emitter for planar figures (polylines, lines, point clouds)."""

import numpy as np

SIZE = 480
PAD = 24


class Figure:
    def __init__(self, extent):
        self.extent = float(extent) * 1.1 or 1.0
        self.items = []

    def _xy(self, p):
        s = (SIZE - 2 * PAD) / (2 * self.extent)
        return PAD + (p[0] + self.extent) * s, SIZE - PAD - (p[1] + self.extent) * s

    def polygon(self, pts, stroke="black"):
        coords = " ".join("%.4f,%.4f" % self._xy(p) for p in pts)
        self.items.append(f'<polygon points="{coords}" fill="none" stroke="{stroke}" stroke-width="1.5"/>')

    def line(self, point, angle, stroke="crimson"):
        d = np.array([np.cos(angle), np.sin(angle)]) * self.extent * 2
        a, b = self._xy(np.asarray(point) - d), self._xy(np.asarray(point) + d)
        self.items.append(f'<line x1="{a[0]:.4f}" y1="{a[1]:.4f}" x2="{b[0]:.4f}" y2="{b[1]:.4f}" '
                          f'stroke="{stroke}" stroke-dasharray="4 3"/>')

    def points(self, pts, fill="steelblue"):
        for p in pts:
            x, y = self._xy(p)
            self.items.append(f'<circle cx="{x:.4f}" cy="{y:.4f}" r="1.5" fill="{fill}"/>')

    def render(self):
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
                f'viewBox="0 0 {SIZE} {SIZE}">')
        clip = f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>'
        return "\n".join([head, clip, *self.items, "</svg>"]) + "\n"


def planar_svg(P, lines=()):
    fig = Figure(np.max(np.abs(P.boundary)))
    fig.polygon(P.boundary)
    for line in lines:
        fig.line(line.point, line.angle)
    return fig.render()


def cloud_svg(points2d):
    pts = np.asarray(points2d, dtype=float)
    fig = Figure(np.max(np.abs(pts)) if len(pts) else 1.0)
    fig.points(pts)
    return fig.render()

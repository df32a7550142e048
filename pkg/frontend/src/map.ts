/**
 * Plain vector rendering of area polygons: no tile provider, just SVG
 * paths in lon/lat space with the y axis flipped so north points up.
 */

import { GeoJsonPolygon } from "./api.js";

export interface ViewBox {
  x: number;
  y: number;
  width: number;
  height: number;
}

export function fitViewBox(polygons: GeoJsonPolygon[], margin = 0.05): ViewBox {
  let minX = Infinity;
  let minY = Infinity;
  let maxX = -Infinity;
  let maxY = -Infinity;
  for (const polygon of polygons) {
    for (const [x, y] of polygon.coordinates[0]) {
      minX = Math.min(minX, x);
      maxX = Math.max(maxX, x);
      minY = Math.min(minY, y);
      maxY = Math.max(maxY, y);
    }
  }
  if (!Number.isFinite(minX)) return { x: 0, y: 0, width: 1, height: 1 };
  const mx = (maxX - minX || 1) * margin;
  const my = (maxY - minY || 1) * margin;
  return {
    x: minX - mx,
    y: -(maxY + my), // y flipped: svg y grows downward, latitude upward
    width: maxX - minX + 2 * mx,
    height: maxY - minY + 2 * my,
  };
}

export function polygonPath(polygon: GeoJsonPolygon): string {
  const ring = polygon.coordinates[0];
  const parts = ring.map(([x, y], i) => `${i === 0 ? "M" : "L"}${x},${-y}`);
  return `${parts.join(" ")} Z`;
}

export function verticesPath(vertices: [number, number][]): string {
  if (vertices.length === 0) return "";
  const parts = vertices.map(([x, y], i) => `${i === 0 ? "M" : "L"}${x},${-y}`);
  return parts.join(" ");
}

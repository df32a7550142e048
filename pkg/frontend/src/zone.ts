/**
 * Map-zone query state: collect drawn vertices, validate client-side
 * (at least three vertices, ring closed on submission), query the
 * service once without filters, and re-filter the cached sections
 * client-side as tags are toggled.
 */

import { ApiClient, GeoJsonPolygon, Section } from "./api.js";

export type Vertex = [number, number];

export interface ZoneState {
  vertices: Vertex[];
  filters: string[];
  sections: Section[];
  allSections: Section[];
  error: string | null;
  queried: boolean;
}

export class ZoneController {
  private vertices: Vertex[] = [];
  private filters: string[] = [];
  private allSections: Section[] = [];
  private error: string | null = null;
  private queried = false;

  constructor(private readonly api: ApiClient) {}

  getState(): ZoneState {
    return {
      vertices: [...this.vertices],
      filters: [...this.filters],
      sections: this.visibleSections(),
      allSections: [...this.allSections],
      error: this.error,
      queried: this.queried,
    };
  }

  addVertex(lon: number, lat: number): void {
    this.vertices.push([lon, lat]);
  }

  reset(): void {
    this.vertices = [];
    this.allSections = [];
    this.error = null;
    this.queried = false;
  }

  canSubmit(): boolean {
    return this.vertices.length >= 3;
  }

  polygon(): GeoJsonPolygon {
    const ring = [...this.vertices.map((v) => [...v])];
    const first = ring[0];
    const last = ring[ring.length - 1];
    if (first[0] !== last[0] || first[1] !== last[1]) ring.push([...first]);
    return { type: "Polygon", coordinates: [ring] };
  }

  /** Query the drawn zone; invalid polygons never reach the network. */
  async submit(context?: Record<string, number>): Promise<ZoneState> {
    if (!this.canSubmit()) {
      this.error = "a zone needs at least three vertices";
      return this.getState();
    }
    try {
      const response = await this.api.zoneQuery(this.polygon(), undefined, context);
      this.allSections = response.sections;
      this.queried = true;
      this.error = null;
    } catch (err) {
      this.error = err instanceof Error ? err.message : String(err);
    }
    return this.getState();
  }

  /** Toggling filters only re-filters the cached response. */
  setFilters(tags: string[]): ZoneState {
    this.filters = [...tags];
    return this.getState();
  }

  private visibleSections(): Section[] {
    if (this.filters.length === 0) return [...this.allSections];
    return this.allSections.filter((s) => this.filters.includes(s.tag));
  }

  /** Polygon of an entity link, for hover highlighting on the map. */
  highlightPolygon(instanceId: string): GeoJsonPolygon | null {
    for (const section of this.allSections) {
      for (const link of section.entity_links) {
        if (link.instance_id === instanceId) return link.polygon;
      }
    }
    return null;
  }
}

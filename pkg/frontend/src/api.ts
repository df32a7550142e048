/**
 * Typed client over the coast-pilot service JSON contracts.
 * All language logic stays on the server; this module only moves JSON.
 */

export interface Diagnostic {
  severity: string;
  code: string;
  span: [number, number];
  message: string;
  hints: string[];
}

export interface EntityLink {
  name: string;
  instance_id: string;
  polygon: GeoJsonPolygon | null;
}

export interface Section {
  tag: string;
  litinaut_text: string;
  entity_links: EntityLink[];
}

export interface GeoJsonPolygon {
  type: "Polygon";
  coordinates: number[][][];
}

export interface Contribution {
  id: string;
  author: string;
  trust_level: number;
  segment: string;
  status: string;
  submitted_at: number;
  retroactive: boolean;
}

export interface ZoneQueryResponse {
  sections: Section[];
  kb_version: number;
}

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
    private token: string | null = null,
  ) {}

  setToken(token: string | null): void {
    this.token = token;
  }

  private headers(): Record<string, string> {
    const headers: Record<string, string> = { "Content-Type": "application/json" };
    if (this.token) headers["Authorization"] = `Bearer ${this.token}`;
    return headers;
  }

  private async post<T>(path: string, body: unknown): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: this.headers(),
      body: JSON.stringify(body),
    });
    const payload = await response.json().catch(() => ({}));
    if (!response.ok) {
      throw new ApiError(response.status, (payload as { error?: string }).error ?? "request failed");
    }
    return payload as T;
  }

  private async get<T>(path: string): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, { headers: this.headers() });
    const payload = await response.json().catch(() => ({}));
    if (!response.ok) {
      throw new ApiError(response.status, (payload as { error?: string }).error ?? "request failed");
    }
    return payload as T;
  }

  validate(segment: string): Promise<{ diagnostics: Diagnostic[] }> {
    return this.post("/validate", { segment });
  }

  submitContribution(segment: string): Promise<{ status: string; contribution_id: string }> {
    return this.post("/contributions", { segment });
  }

  moderationQueue(): Promise<{ pending: Contribution[] }> {
    return this.get("/moderation/queue");
  }

  decide(
    id: string,
    decision: "approve" | "reject",
    retroactive = false,
  ): Promise<{ status: string; regenerated: string[] }> {
    return this.post(`/moderation/${id}/decision`, { decision, retroactive });
  }

  zoneQuery(
    polygon: GeoJsonPolygon,
    filters?: string[],
    context?: Record<string, number>,
  ): Promise<ZoneQueryResponse> {
    return this.post("/zone-query", { polygon, filters, context });
  }

  healthz(): Promise<{ status: string }> {
    return this.get("/healthz");
  }
}

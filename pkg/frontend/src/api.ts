// Thin client for the engine's HTTP JSON API.

export interface TraceEntry {
  stage: string;
  profile: number[];
}

export interface ProcessResponse {
  class: string;
  scores: number[];
  profile_raw: number[];
  profile_processed: number[];
  curve3d: [number, number, number][];
  smoothed: [number, number, number][];
  trace?: TraceEntry[];
}

export interface ApiError {
  error: string;
}

export class ServiceError extends Error {
  constructor(public code: string, public status: number) {
    super(`service error ${status}: ${code}`);
  }
}

export async function processStroke(baseUrl: string, body: string): Promise<ProcessResponse> {
  const response = await fetch(`${baseUrl}/api/process`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body,
  });
  if (!response.ok) {
    let code = "UNKNOWN";
    try {
      code = ((await response.json()) as ApiError).error ?? code;
    } catch {
      // non-JSON error body; keep UNKNOWN
    }
    throw new ServiceError(code, response.status);
  }
  return (await response.json()) as ProcessResponse;
}

export async function fetchHealth(baseUrl: string): Promise<{ status: string; model_topology: number[] }> {
  const response = await fetch(`${baseUrl}/api/health`);
  if (!response.ok) throw new ServiceError("HEALTH", response.status);
  return (await response.json()) as { status: string; model_topology: number[] };
}

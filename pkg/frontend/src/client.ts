import type {
  DetailedRowDto,
  ErrorBody,
  MatrixDto,
  NewRequestBody,
  OverviewRowDto,
  RequestDto,
} from './types.js';

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

// ApiError carries the structured error body the server sends with 4xx/5xx.
export class ApiError extends Error {
  readonly status: number;
  readonly code: string;
  readonly details: string[] | null;

  constructor(body: ErrorBody) {
    super(body.message);
    this.status = body.status;
    this.code = body.code;
    this.details = body.details;
  }
}

export class SlaClient {
  private readonly base: string;
  private readonly fetchFn: FetchLike;

  constructor(baseUrl: string, fetchFn: FetchLike = (u, i) => fetch(u, i)) {
    this.base = baseUrl.replace(/\/+$/, '');
    this.fetchFn = fetchFn;
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.base + path, init);
    if (!response.ok) {
      let body: ErrorBody;
      try {
        body = (await response.json()) as ErrorBody;
      } catch {
        body = {
          status: response.status,
          code: 'unreadable_error',
          message: `request failed with status ${response.status}`,
          details: null,
        };
      }
      throw new ApiError(body);
    }
    return (await response.json()) as T;
  }

  private post<T>(path: string, payload: unknown, method = 'POST'): Promise<T> {
    return this.request<T>(path, {
      method,
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(payload),
    });
  }

  detailedReport(asOf: string): Promise<DetailedRowDto[]> {
    return this.request(`/reports/detailed?as_of=${encodeURIComponent(asOf)}`);
  }

  overviewReport(asOf: string): Promise<OverviewRowDto[]> {
    return this.request(`/reports/overview?as_of=${encodeURIComponent(asOf)}`);
  }

  getMatrix(): Promise<MatrixDto> {
    return this.request('/priority-matrix');
  }

  putMatrix(matrix: MatrixDto): Promise<MatrixDto> {
    return this.post('/priority-matrix', matrix, 'PUT');
  }

  createRequest(body: NewRequestBody): Promise<RequestDto> {
    return this.post('/requests', body);
  }

  listRequests(filters: Record<string, string> = {}): Promise<RequestDto[]> {
    const query = new URLSearchParams(filters).toString();
    return this.request(query ? `/requests?${query}` : '/requests');
  }
}

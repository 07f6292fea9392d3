// Typed client for the judgment summarization HTTP API. Every server
// interaction in the UI goes through this module.

export interface CaseMetadata {
    title: string;
    court: string;
    jurisdiction: string;
    subject_matter: string;
    decision_date: string;
}

export interface CaseListItem {
    id: string;
    metadata: CaseMetadata;
}

export interface CaseListPage {
    items: CaseListItem[];
    total: number;
    page: number;
}

export interface CaseDocument {
    id: string;
    metadata: CaseMetadata;
    raw_text: string;
    ingested_at: string;
}

export interface SummarySection {
    kind: string;
    bullets: string[];
}

export interface SummarizeResponse {
    case_id: string;
    method_used: string;
    quality: number;
    sections: SummarySection[];
    combined_text: string;
    config: { ratio: number; damping: number };
}

export interface Health {
    status: string;
    cases: number;
    model_loaded: boolean;
}

export interface ListQuery {
    subject?: string;
    jurisdiction?: string;
    from?: string;
    to?: string;
    page?: number;
    pageSize?: number;
}

export interface SummarizeRequest {
    method: string;
    ratio?: number;
    include_introduction?: boolean;
}

export const METHODS = ["auto", "textrank", "lexrank", "supervised"] as const;

/** Carries the server's error code ("not_found", "model_not_loaded", ...).
 *  Network failures use status 0 and code "network". */
export class ApiError extends Error {
    constructor(
        readonly status: number,
        readonly code: string,
        message: string,
    ) {
        super(message);
        this.name = "ApiError";
    }
}

// structural subset of Response, so tests can hand in plain objects
export interface HttpResponse {
    ok: boolean;
    status: number;
    json(): Promise<unknown>;
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<HttpResponse>;

/** What the app needs from the server; ApiClient is the real implementation. */
export interface Api {
    health(): Promise<Health>;
    listCases(query?: ListQuery): Promise<CaseListPage>;
    getCase(caseId: string): Promise<CaseDocument>;
    summarize(caseId: string, body: SummarizeRequest): Promise<SummarizeResponse>;
}

export class ApiClient implements Api {
    constructor(
        readonly baseUrl: string,
        private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
    ) {}

    health(): Promise<Health> {
        return this.request("GET", "/health");
    }

    listCases(query: ListQuery = {}): Promise<CaseListPage> {
        const params = new URLSearchParams();
        if (query.subject) params.set("subject", query.subject);
        if (query.jurisdiction) params.set("jurisdiction", query.jurisdiction);
        if (query.from) params.set("from", query.from);
        if (query.to) params.set("to", query.to);
        if (query.page !== undefined) params.set("page", String(query.page));
        if (query.pageSize !== undefined) params.set("page_size", String(query.pageSize));
        const qs = params.toString();
        return this.request("GET", qs ? `/cases?${qs}` : "/cases");
    }

    getCase(caseId: string): Promise<CaseDocument> {
        return this.request("GET", `/cases/${caseId}`);
    }

    summarize(caseId: string, body: SummarizeRequest): Promise<SummarizeResponse> {
        return this.request("POST", `/cases/${caseId}/summary`, body);
    }

    private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
        let response: HttpResponse;
        try {
            response = await this.fetchImpl(this.baseUrl + path, {
                method,
                body: body === undefined ? undefined : JSON.stringify(body),
                headers: body === undefined ? undefined : { "Content-Type": "application/json" },
            });
        } catch (err) {
            throw new ApiError(0, "network", err instanceof Error ? err.message : "network failure");
        }
        if (!response.ok) {
            let code = "http_error";
            let message = `request failed with status ${response.status}`;
            try {
                const data = (await response.json()) as { error?: string; message?: string };
                if (data.error) code = data.error;
                if (data.message) message = data.message;
            } catch {
                // non-JSON error body, keep the generic message
            }
            throw new ApiError(response.status, code, message);
        }
        return (await response.json()) as T;
    }
}

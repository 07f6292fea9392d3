import { describe, expect, it } from "vitest";

import type {
    Api,
    CaseDocument,
    CaseListPage,
    Health,
    ListQuery,
    SummarizeRequest,
    SummarizeResponse,
} from "../src/api.js";
import { ApiError } from "../src/api.js";
import { App } from "../src/app.js";

const CASE_ID = "c".repeat(64);

const listPage: CaseListPage = {
    items: [
        {
            id: CASE_ID,
            metadata: {
                title: "Bản án 12/2021/DS-ST",
                court: "TÒA ÁN NHÂN DÂN THÀNH PHỐ HÀ NỘI",
                jurisdiction: "Hà Nội",
                subject_matter: "hợp đồng vay tài sản",
                decision_date: "2021-03-15",
            },
        },
    ],
    total: 1,
    page: 1,
};

const caseDoc: CaseDocument = {
    id: CASE_ID,
    metadata: listPage.items[0].metadata,
    raw_text: "NỘI DUNG VỤ ÁN\nNguyên đơn trình bày.\nQUYẾT ĐỊNH\nChấp nhận.\n",
    ingested_at: "2024-08-01T00:00:00+00:00",
};

const health: Health = { status: "ok", cases: 1, model_loaded: true };

function summaryOf(method: string): SummarizeResponse {
    return {
        case_id: CASE_ID,
        method_used: method,
        quality: 0.5,
        sections: [{ kind: "decision", bullets: ["Chấp nhận."] }],
        combined_text: "QUYẾT ĐỊNH\n- Chấp nhận.\n",
        config: { ratio: 0.3, damping: 0.85 },
    };
}

/** Stub server: canned answers, a call log, and optional one-shot failures. */
class StubApi implements Api {
    calls: string[] = [];
    listQueries: ListQuery[] = [];
    summarizeBodies: SummarizeRequest[] = [];
    failListOnce: Error | null = null;
    getCaseError: Error | null = null;
    summarizeError: Error | null = null;
    nextSummary: (body: SummarizeRequest) => Promise<SummarizeResponse> = (body) =>
        Promise.resolve(summaryOf(body.method));

    health(): Promise<Health> {
        this.calls.push("health");
        return Promise.resolve(health);
    }

    listCases(query: ListQuery = {}): Promise<CaseListPage> {
        this.calls.push("list");
        this.listQueries.push(query);
        if (this.failListOnce) {
            const err = this.failListOnce;
            this.failListOnce = null;
            return Promise.reject(err);
        }
        return Promise.resolve(listPage);
    }

    getCase(caseId: string): Promise<CaseDocument> {
        this.calls.push(`get:${caseId}`);
        if (this.getCaseError) return Promise.reject(this.getCaseError);
        return Promise.resolve(caseDoc);
    }

    summarize(caseId: string, body: SummarizeRequest): Promise<SummarizeResponse> {
        this.calls.push(`summarize:${caseId}`);
        this.summarizeBodies.push(body);
        if (this.summarizeError) return Promise.reject(this.summarizeError);
        return this.nextSummary(body);
    }
}

function mounted() {
    const api = new StubApi();
    const root = document.createElement("div");
    const app = new App(api, root);
    return { api, root, app };
}

const flush = () => new Promise((resolve) => setTimeout(resolve, 0));

describe("browsing", () => {
    it("renders the case list from the api", async () => {
        const { root, app } = mounted();
        await app.showBrowser();
        expect(root.querySelector(".case-count")?.textContent).toBe("1 case");
        expect(root.querySelectorAll(".case-row")).toHaveLength(1);
    });

    it("issues a fresh request with page 1 when the filter changes", async () => {
        const { api, root, app } = mounted();
        app.state.filter.page = 3;
        await app.showBrowser();
        root.querySelector<HTMLInputElement>(".filter-subject")!.value = "bảo hiểm";
        root.querySelector("form.filters")!.dispatchEvent(new Event("submit"));
        await flush();
        expect(api.listQueries).toHaveLength(2);
        expect(api.listQueries[1].subject).toBe("bảo hiểm");
        expect(api.listQueries[1].page).toBe(1);
        expect(app.state.filter.page).toBe(1);
    });

    it("shows an error banner with a working retry when the list request fails", async () => {
        const { api, root, app } = mounted();
        api.failListOnce = new ApiError(0, "network", "connection refused");
        await app.showBrowser();
        expect(root.querySelector(".error-banner")?.textContent).toContain("cannot reach the API");
        root.querySelector<HTMLButtonElement>(".retry")!.click();
        await flush();
        expect(root.querySelector(".error-banner")).toBeNull();
        expect(root.querySelectorAll(".case-row")).toHaveLength(1);
    });
});

describe("opening a case", () => {
    it("renders the detail view for a clicked row", async () => {
        const { root, app } = mounted();
        await app.showBrowser();
        root.querySelector<HTMLElement>(".case-row")!.click();
        await flush();
        expect(root.querySelector(".detail")).not.toBeNull();
        expect(root.querySelector(".source-text")?.textContent).toBe(caseDoc.raw_text);
        expect(app.state.view).toEqual({ name: "detail", caseId: CASE_ID });
    });

    it("returns to the browser with the filter intact", async () => {
        const { api, root, app } = mounted();
        app.state.filter = { ...app.state.filter, jurisdiction: "Hà Nội" };
        await app.showBrowser();
        await app.openCase(CASE_ID);
        root.querySelector<HTMLButtonElement>(".back")!.click();
        await flush();
        expect(app.state.filter.jurisdiction).toBe("Hà Nội");
        const last = api.listQueries[api.listQueries.length - 1];
        expect(last.jurisdiction).toBe("Hà Nội");
        expect(root.querySelector(".case-list")).not.toBeNull();
    });

    it("shows the not-found view on a 404", async () => {
        const { api, root, app } = mounted();
        api.getCaseError = new ApiError(404, "not_found", "no such case");
        await app.openCase(CASE_ID);
        expect(root.querySelector(".not-found")?.textContent).toContain(CASE_ID);
        expect(app.state.view).toEqual({ name: "missing", caseId: CASE_ID });
    });
});

describe("summarizing", () => {
    it("sends the chosen method and ratio and renders the response", async () => {
        const { api, root, app } = mounted();
        await app.openCase(CASE_ID);
        app.state.method = "lexrank";
        app.state.ratio = 0.5;
        root.querySelector<HTMLButtonElement>(".summarize")!.click();
        await flush();
        expect(api.summarizeBodies).toEqual([{ method: "lexrank", ratio: 0.5 }]);
        expect(root.querySelector(".summary .method-used")?.textContent).toBe("lexrank");
        expect(root.querySelector(".bullets li")?.textContent).toBe("Chấp nhận.");
        expect(app.state.lastSummary?.method_used).toBe("lexrank");
    });

    it("keeps only the latest of two overlapping requests", async () => {
        const { api, root, app } = mounted();
        await app.openCase(CASE_ID);

        let resolveFirst!: (r: SummarizeResponse) => void;
        const pending = new Promise<SummarizeResponse>((resolve) => {
            resolveFirst = resolve;
        });
        api.nextSummary = () => pending;
        const first = app.runSummary(CASE_ID);

        api.nextSummary = (body) => Promise.resolve(summaryOf(body.method));
        app.state.method = "textrank";
        await app.runSummary(CASE_ID);
        expect(root.querySelector(".method-used")?.textContent).toBe("textrank");

        resolveFirst(summaryOf("auto"));
        await first;
        expect(root.querySelector(".method-used")?.textContent).toBe("textrank");
        expect(app.state.lastSummary?.method_used).toBe("textrank");
    });

    it("shows the server message when summarizing fails", async () => {
        const { api, root, app } = mounted();
        await app.openCase(CASE_ID);
        api.summarizeError = new ApiError(409, "model_not_loaded", "train a model first");
        await app.runSummary(CASE_ID);
        expect(root.querySelector(".summary-slot .error-banner")?.textContent).toContain(
            "train a model first",
        );
    });
});

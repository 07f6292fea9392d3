// Wires the API client, the session state, and the views together.

import { ApiError } from "./api.js";
import type { Api } from "./api.js";
import { LatestWins, applyChange, initialState, queryOf } from "./state.js";
import type { UiState } from "./state.js";
import {
    renderBrowser,
    renderDetail,
    renderError,
    renderLoading,
    renderNotFound,
    renderSummary,
} from "./views.js";

function describe(err: unknown): string {
    if (err instanceof ApiError) {
        return err.status === 0 ? `cannot reach the API: ${err.message}` : err.message;
    }
    return err instanceof Error ? err.message : String(err);
}

export class App {
    readonly state: UiState = initialState();
    private readonly listRequests = new LatestWins();
    private readonly summaryRequests = new LatestWins();

    constructor(
        private readonly client: Api,
        private readonly root: HTMLElement,
    ) {}

    async showBrowser(): Promise<void> {
        this.state.view = { name: "browser" };
        const token = this.listRequests.begin();
        this.root.replaceChildren(renderLoading());
        let page;
        try {
            page = await this.client.listCases(queryOf(this.state.filter));
        } catch (err) {
            if (!this.listRequests.isCurrent(token)) return;
            this.root.replaceChildren(renderError(describe(err), () => void this.showBrowser()));
            return;
        }
        if (!this.listRequests.isCurrent(token)) return;
        this.root.replaceChildren(
            renderBrowser(page, this.state.filter, {
                onOpen: (caseId) => void this.openCase(caseId),
                onFilter: (patch) => {
                    this.state.filter = applyChange(this.state.filter, patch);
                    void this.showBrowser();
                },
                onPage: (pageNumber) => {
                    this.state.filter = applyChange(this.state.filter, { page: pageNumber });
                    void this.showBrowser();
                },
            }),
        );
    }

    async openCase(caseId: string): Promise<void> {
        this.root.replaceChildren(renderLoading());
        let doc, health;
        try {
            [doc, health] = await Promise.all([this.client.getCase(caseId), this.client.health()]);
        } catch (err) {
            if (err instanceof ApiError && err.status === 404) {
                this.state.view = { name: "missing", caseId };
                this.root.replaceChildren(renderNotFound(caseId, () => void this.showBrowser()));
            } else {
                this.root.replaceChildren(renderError(describe(err), () => void this.openCase(caseId)));
            }
            return;
        }
        this.state.view = { name: "detail", caseId };
        this.root.replaceChildren(
            renderDetail(doc, health, this.state.method, this.state.ratio, {
                onBack: () => void this.showBrowser(),
                onMethod: (method) => {
                    this.state.method = method;
                },
                onRatio: (ratio) => {
                    this.state.ratio = ratio;
                },
                onSummarize: () => void this.runSummary(caseId),
            }),
        );
    }

    async runSummary(caseId: string): Promise<void> {
        const slot = this.root.querySelector(".summary-slot");
        if (!slot) return;
        const token = this.summaryRequests.begin();
        slot.replaceChildren(renderLoading());
        let response;
        try {
            response = await this.client.summarize(caseId, {
                method: this.state.method,
                ratio: this.state.ratio,
            });
        } catch (err) {
            if (!this.summaryRequests.isCurrent(token)) return;
            slot.replaceChildren(renderError(describe(err), () => void this.runSummary(caseId)));
            return;
        }
        if (!this.summaryRequests.isCurrent(token)) return;
        this.state.lastSummary = response;
        slot.replaceChildren(renderSummary(response));
    }
}

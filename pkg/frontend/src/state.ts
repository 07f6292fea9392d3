// Session state: the active filter, the open view, and the summarize knobs.

import type { ListQuery, SummarizeResponse } from "./api.js";

export const PAGE_SIZE = 20;

export interface Filter {
    subject: string;
    jurisdiction: string;
    from: string;
    to: string;
    page: number;
}

export function emptyFilter(): Filter {
    return { subject: "", jurisdiction: "", from: "", to: "", page: 1 };
}

/** Apply a filter edit; any change other than paging jumps back to page 1. */
export function applyChange(filter: Filter, patch: Partial<Filter>): Filter {
    const next = { ...filter, ...patch };
    const pagingOnly = Object.keys(patch).every((key) => key === "page");
    if (!pagingOnly) next.page = 1;
    return next;
}

export function queryOf(filter: Filter): ListQuery {
    return {
        subject: filter.subject || undefined,
        jurisdiction: filter.jurisdiction || undefined,
        from: filter.from || undefined,
        to: filter.to || undefined,
        page: filter.page,
        pageSize: PAGE_SIZE,
    };
}

export function pageCount(total: number, pageSize: number = PAGE_SIZE): number {
    return Math.max(1, Math.ceil(total / pageSize));
}

export type View =
    | { name: "browser" }
    | { name: "detail"; caseId: string }
    | { name: "missing"; caseId: string };

export interface UiState {
    filter: Filter;
    view: View;
    method: string;
    ratio: number;
    lastSummary: SummarizeResponse | null;
}

export function initialState(): UiState {
    return {
        filter: emptyFilter(),
        view: { name: "browser" },
        method: "auto",
        ratio: 0.3,
        lastSummary: null,
    };
}

/** Hands out tokens so that only the most recent request may render;
 *  responses to superseded requests are dropped. */
export class LatestWins {
    private seq = 0;

    begin(): number {
        return ++this.seq;
    }

    isCurrent(token: number): boolean {
        return token === this.seq;
    }
}

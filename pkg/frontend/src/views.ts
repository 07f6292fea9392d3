// DOM builders for the three screens. All functions are pure: state in,
// detached element out, user actions reported through handler callbacks.
// Rendered summary text is taken verbatim from the API response; nothing
// here rewrites or reflows bullet strings.

import type { CaseDocument, CaseListPage, Health, SummarizeResponse } from "./api.js";
import type { Filter } from "./state.js";
import { METHODS } from "./api.js";
import { pageCount } from "./state.js";

type Child = Node | string;

function el<K extends keyof HTMLElementTagNameMap>(
    tag: K,
    attrs: Record<string, string> = {},
    children: Child[] = [],
): HTMLElementTagNameMap[K] {
    const node = document.createElement(tag);
    for (const [key, value] of Object.entries(attrs)) {
        if (key === "class") node.className = value;
        else node.setAttribute(key, value);
    }
    for (const child of children) {
        node.append(child);
    }
    return node;
}

// --- case browser ----------------------------------------------------------

export interface BrowserHandlers {
    onOpen(caseId: string): void;
    onFilter(patch: Partial<Filter>): void;
    onPage(page: number): void;
}

export function renderBrowser(page: CaseListPage, filter: Filter, on: BrowserHandlers): HTMLElement {
    const root = el("section", { class: "browser" });
    root.append(renderFilterForm(filter, on));

    const count = el("p", { class: "case-count" }, [
        `${page.total} case${page.total === 1 ? "" : "s"}`,
    ]);
    root.append(count);

    if (page.total === 0) {
        root.append(el("p", { class: "empty" }, ["no cases"]));
        return root;
    }

    const list = el("ul", { class: "case-list" });
    for (const item of page.items) {
        const meta = item.metadata;
        const row = el("li", { class: "case-row", "data-id": item.id }, [
            el("span", { class: "case-title" }, [meta.title]),
            el("span", { class: "case-court" }, [meta.court]),
            el("span", { class: "case-date" }, [meta.decision_date]),
            el("span", { class: "case-subject" }, [meta.subject_matter]),
        ]);
        row.addEventListener("click", () => on.onOpen(item.id));
        list.append(row);
    }
    root.append(list);
    root.append(renderPager(page, on));
    return root;
}

function renderFilterForm(filter: Filter, on: BrowserHandlers): HTMLElement {
    const subject = el("input", { class: "filter-subject", placeholder: "subject matter" });
    subject.value = filter.subject;
    const jurisdiction = el("input", { class: "filter-jurisdiction", placeholder: "jurisdiction" });
    jurisdiction.value = filter.jurisdiction;
    const from = el("input", { class: "filter-from", type: "date" });
    from.value = filter.from;
    const to = el("input", { class: "filter-to", type: "date" });
    to.value = filter.to;

    const form = el("form", { class: "filters" }, [
        subject,
        jurisdiction,
        from,
        to,
        el("button", { type: "submit" }, ["Apply"]),
    ]);
    form.addEventListener("submit", (event) => {
        event.preventDefault();
        on.onFilter({
            subject: subject.value,
            jurisdiction: jurisdiction.value,
            from: from.value,
            to: to.value,
        });
    });
    return form;
}

function renderPager(page: CaseListPage, on: BrowserHandlers): HTMLElement {
    const pages = pageCount(page.total);
    const prev = el("button", { class: "pager-prev" }, ["Previous"]);
    const next = el("button", { class: "pager-next" }, ["Next"]);
    prev.disabled = page.page <= 1;
    next.disabled = page.page >= pages;
    prev.addEventListener("click", () => on.onPage(page.page - 1));
    next.addEventListener("click", () => on.onPage(page.page + 1));
    return el("nav", { class: "pager" }, [
        prev,
        el("span", { class: "pager-label" }, [`page ${page.page} / ${pages}`]),
        next,
    ]);
}

// --- case detail -----------------------------------------------------------

export interface DetailHandlers {
    onBack(): void;
    onMethod(method: string): void;
    onRatio(ratio: number): void;
    onSummarize(): void;
}

const HEADING_LABELS = new Set([
    "nội dung vụ án",
    "nhận định của tòa án",
    "nhận định của hội đồng xét xử",
    "quyết định",
    "vì các lẽ trên",
]);

/** Whole-line heading test mirroring the server's parser: case-insensitive,
 *  at most one trailing colon. */
export function isHeadingLine(line: string): boolean {
    let text = line.trim();
    if (text.endsWith(":")) text = text.slice(0, -1);
    return HEADING_LABELS.has(text.toLowerCase());
}

export function renderDetail(
    doc: CaseDocument,
    health: Health,
    method: string,
    ratio: number,
    on: DetailHandlers,
): HTMLElement {
    const back = el("button", { class: "back" }, ["Back to cases"]);
    back.addEventListener("click", () => on.onBack());

    const meta = doc.metadata;
    const header = el("header", { class: "case-header" }, [
        back,
        el("h2", {}, [meta.title]),
        el("p", { class: "case-meta" }, [
            `${meta.court} · ${meta.jurisdiction} · ${meta.decision_date} · ${meta.subject_matter}`,
        ]),
    ]);

    const source = el("article", { class: "source-pane" }, [renderSource(doc.raw_text)]);
    const panel = el("aside", { class: "summary-pane" }, [
        renderSummarizePanel(health, method, ratio, on),
        el("div", { class: "summary-slot" }),
    ]);

    return el("section", { class: "detail" }, [
        header,
        el("div", { class: "panes" }, [source, panel]),
    ]);
}

function renderSource(rawText: string): HTMLElement {
    // line nodes alternate with literal "\n" text nodes so that textContent
    // reproduces the document exactly
    const pre = el("pre", { class: "source-text" });
    const lines = rawText.split("\n");
    lines.forEach((line, index) => {
        pre.append(el("span", { class: isHeadingLine(line) ? "heading-line" : "text-line" }, [line]));
        if (index < lines.length - 1) pre.append("\n");
    });
    return pre;
}

function renderSummarizePanel(health: Health, method: string, ratio: number, on: DetailHandlers): HTMLElement {
    const select = el("select", { class: "method-select" });
    for (const name of METHODS) {
        const option = el("option", { value: name }, [name]);
        if (name === "supervised" && !health.model_loaded) {
            option.disabled = true;
            option.title = "no scoring model loaded on the server";
        }
        select.append(option);
    }
    select.value = method;
    select.addEventListener("change", () => on.onMethod(select.value));

    const slider = el("input", {
        class: "ratio-slider",
        type: "range",
        min: "0.1",
        max: "0.9",
        step: "0.1",
    });
    slider.value = String(ratio);
    const readout = el("span", { class: "ratio-value" }, [slider.value]);
    slider.addEventListener("input", () => {
        readout.textContent = slider.value;
        on.onRatio(Number(slider.value));
    });

    const run = el("button", { class: "summarize" }, ["Summarize"]);
    run.addEventListener("click", () => on.onSummarize());

    return el("div", { class: "summarize-panel" }, [
        el("label", {}, ["Method ", select]),
        el("label", {}, ["Ratio ", slider, readout]),
        run,
    ]);
}

// --- summary ---------------------------------------------------------------

function titleCase(kind: string): string {
    return kind.charAt(0).toUpperCase() + kind.slice(1);
}

export function renderSummary(
    response: SummarizeResponse,
    copy: (text: string) => void = (text) => void navigator.clipboard.writeText(text),
): HTMLElement {
    const root = el("article", { class: "summary" });
    root.append(
        el("p", { class: "summary-badges" }, [
            el("span", { class: "method-used" }, [response.method_used]),
            el("span", { class: "quality" }, [`quality ${response.quality.toFixed(3)}`]),
        ]),
    );

    for (const section of response.sections) {
        if (section.bullets.length === 0) continue;
        const items = el("ul", { class: "bullets" });
        for (const bullet of section.bullets) {
            items.append(el("li", {}, [bullet]));
        }
        root.append(
            el("section", { class: "summary-section", "data-kind": section.kind }, [
                el("h3", {}, [titleCase(section.kind)]),
                items,
            ]),
        );
    }

    const copyButton = el("button", { class: "copy" }, ["Copy combined summary"]);
    copyButton.addEventListener("click", () => copy(response.combined_text));
    root.append(copyButton);
    return root;
}

// --- shared states ---------------------------------------------------------

export function renderLoading(): HTMLElement {
    return el("p", { class: "loading" }, ["loading..."]);
}

export function renderError(message: string, onRetry: () => void): HTMLElement {
    const retry = el("button", { class: "retry" }, ["Retry"]);
    retry.addEventListener("click", () => onRetry());
    return el("div", { class: "error-banner" }, [el("span", {}, [message]), retry]);
}

export function renderNotFound(caseId: string, onBack: () => void): HTMLElement {
    const back = el("button", { class: "back" }, ["Back to cases"]);
    back.addEventListener("click", () => onBack());
    return el("div", { class: "not-found" }, [
        el("p", {}, [`case ${caseId} was not found`]),
        back,
    ]);
}

// Entry point: resolve the API base URL and mount the app.

import { ApiClient } from "./api.js";
import { App } from "./app.js";

function baseUrl(): string {
    const fromWindow = (window as { LEXSUMM_API?: string }).LEXSUMM_API;
    if (fromWindow) return fromWindow;
    const fromQuery = new URLSearchParams(window.location.search).get("api");
    if (fromQuery) return fromQuery;
    return "http://127.0.0.1:8080";
}

const mount = document.querySelector<HTMLElement>("#app");
if (mount) {
    const app = new App(new ApiClient(baseUrl()), mount);
    void app.showBrowser();
}

/** Browser entry point: mount the dashboard against the same origin the
 * page is served from (override with ?api=<base-url>). */

import { createApp } from "./app.js";

const params = new URLSearchParams(window.location.search);
const baseUrl = params.get("api") ?? "";
const root = document.getElementById("app");
if (root) {
  void createApp(root, baseUrl).render();
}

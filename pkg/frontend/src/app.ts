/** Dashboard shell: token login, hash routing, role-specific views. */

import { ApiClient } from "./api.js";
import { clear, el, errorList } from "./dom.js";
import { Session, SessionStore } from "./session.js";
import type { Role } from "./types.js";
import { renderExaminer } from "./views/examiner.js";
import { renderStudent } from "./views/student.js";

export interface App {
  client: ApiClient;
  store: SessionStore;
  /** Re-render the current route; tests await this after driving events.
   * Calls are serialized so concurrent triggers cannot interleave. */
  render: () => Promise<void>;
  login: (session: Session) => Promise<void>;
}

function loginForm(app: App): HTMLElement {
  const form = el("form", { class: "panel", "data-view": "login" });
  const token = el("input", { name: "token", type: "password", placeholder: "access token" });
  const role = el("select", { name: "role" });
  role.append(el("option", { value: "examiner" }, "examiner"));
  role.append(el("option", { value: "student" }, "student"));
  const studentId = el("input", { name: "student_id", placeholder: "student id (students only)" });
  const submit = el("button", { type: "submit", "data-action": "login" }, "Sign in");
  form.append(
    el("h2", {}, "Sign in"),
    el("label", {}, "Token ", token),
    el("label", {}, "Role ", role),
    el("label", {}, "Student id ", studentId),
    submit,
  );
  form.addEventListener("submit", async (event) => {
    event.preventDefault();
    const session: Session = {
      token: token.value,
      role: role.value as Role,
      studentId: studentId.value.trim() || undefined,
    };
    try {
      app.client.setToken(session.token);
      await app.client.health();
      await app.login(session);
    } catch (error) {
      form.querySelector('[data-role="errors"]')?.remove();
      form.prepend(errorList([String(error)]));
    }
  });
  return form;
}

function parseRoute(hash: string): { view: string; examId: string | null } {
  const parts = hash.replace(/^#\/?/, "").split("/").filter(Boolean);
  return { view: parts[0] ?? "", examId: parts[1] ?? null };
}

export function createApp(root: HTMLElement, baseUrl: string): App {
  const client = new ApiClient(baseUrl);
  const store: SessionStore = { current: null, knownExamIds: [] };

  let queue: Promise<void> = Promise.resolve();
  // Hash changes made by the app itself already trigger a render; the
  // hashchange listener must skip those or a second, later render could
  // replace DOM the user (or a test) is interacting with.
  let selfInitiatedHashChanges = 0;

  function setHash(target: string): void {
    if (window.location.hash !== target) {
      selfInitiatedHashChanges += 1;
      window.location.hash = target;
    }
  }

  async function navigate(examId: string | null): Promise<void> {
    const role = store.current?.role ?? "examiner";
    setHash(`#/${role}${examId ? `/${examId}` : ""}`);
    await app.render();
  }

  async function doRender(): Promise<void> {
    const session = store.current;
    const route = parseRoute(window.location.hash);
    clear(root);
    const header = el(
      "header",
      {},
      el("h1", {}, "scriptgrader dashboard"),
      session
        ? el(
            "p",
            { "data-role": "whoami" },
            `signed in as ${session.role}${session.studentId ? ` (${session.studentId})` : ""}`,
          )
        : el("p", { "data-role": "whoami" }, "signed out"),
    );
    root.append(header);
    const main = el("main", {});
    root.append(main);
    if (!session) {
      main.append(loginForm(app));
      return;
    }
    if (session.role === "examiner") {
      await renderExaminer(main, client, store, route.examId, navigate);
    } else {
      await renderStudent(
        main,
        client,
        store,
        session.studentId ?? "",
        route.examId,
        navigate,
      );
    }
  }

  const app: App = {
    client,
    store,
    render() {
      queue = queue.then(doRender, doRender);
      return queue;
    },
    async login(session: Session) {
      store.current = session;
      client.setToken(session.token);
      setHash(session.role === "examiner" ? "#/examiner" : "#/student");
      await app.render();
    },
  };

  window.addEventListener("hashchange", () => {
    if (selfInitiatedHashChanges > 0) {
      selfInitiatedHashChanges -= 1;
      return;
    }
    void app.render();
  });
  return app;
}

import { GameApi } from "./api.js";
import { BoardDom } from "./dom.js";
import { BoardSession } from "./session.js";

async function boot(): Promise<void> {
  const api = new GameApi("");
  const root = document.getElementById("app");
  if (!root) return;

  const params = new URLSearchParams(window.location.search);
  const existing = params.get("session");
  let sess: BoardSession;
  if (existing) {
    sess = await BoardSession.attach(api, existing);
  } else {
    const kind = params.get("kind") ?? "ap3-board";
    const role = (params.get("role") ?? "proposer") as "proposer" | "chooser";
    sess = await BoardSession.create(api, {
      kind,
      cond: params.get("cond") ?? undefined,
      mode: (params.get("mode") as "max" | "order" | "unrestricted") ?? "max",
      human_role: role,
    });
    params.set("session", sess.state.id);
    window.history.replaceState(null, "", `?${params}`);
  }
  new BoardDom(root as HTMLElement, sess).draw();
}

boot().catch((err) => {
  const root = document.getElementById("app");
  if (root) root.textContent = `failed to start: ${err}`;
});

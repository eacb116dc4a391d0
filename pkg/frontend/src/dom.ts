/** Thin DOM binding for the board view-model. */

import type { BoardSession, Cell } from "./session.js";
import { render } from "./view.js";

export class BoardDom {
  constructor(
    private root: HTMLElement,
    private sess: BoardSession,
  ) {}

  draw(): void {
    const view = render(this.sess);
    this.root.innerHTML = "";

    const status = document.createElement("div");
    status.className = "status";
    status.textContent = `${view.message}  [position outcome: ${view.outcome}]`;
    this.root.appendChild(status);

    const board = document.createElement("div");
    board.className = view.dims === 1 ? "strip" : "grid";
    if (view.dims === 2) {
      board.style.gridTemplateColumns = `repeat(${view.bounds[0] + 1}, 28px)`;
    }
    for (const cv of view.cells) {
      const btn = document.createElement("button");
      btn.className = "cell";
      if (cv.stone) btn.classList.add("stone");
      if (cv.staged) btn.classList.add("staged");
      if (cv.overlay) btn.classList.add("overlay");
      btn.disabled = !cv.selectable && !cv.staged;
      btn.title = typeof cv.cell === "number" ? String(cv.cell) : `${cv.cell[0]},${cv.cell[1]}`;
      btn.addEventListener("click", () => {
        this.sess.select(cv.cell as Cell);
        this.draw();
      });
      board.appendChild(btn);
    }
    this.root.appendChild(board);

    if (view.phase === "propose") {
      const submit = document.createElement("button");
      submit.textContent = "submit proposal";
      submit.addEventListener("click", async () => {
        await this.sess.submitProposal();
        this.draw();
      });
      this.root.appendChild(submit);
    }
    if (view.phase === "choose" && view.pendingProposal) {
      const row = document.createElement("div");
      view.pendingProposal.forEach((t, i) => {
        const pick = document.createElement("button");
        pick.textContent = `take ${JSON.stringify(t)}`;
        pick.addEventListener("click", async () => {
          await this.sess.chooseOption(i);
          this.draw();
        });
        row.appendChild(pick);
      });
      this.root.appendChild(row);
    }
    if (view.dims === 2) {
      const overlay = document.createElement("button");
      overlay.textContent = this.sess.overlayOn ? "hide P overlay" : "show P overlay";
      overlay.addEventListener("click", async () => {
        await this.sess.toggleOverlay();
        this.draw();
      });
      this.root.appendChild(overlay);
    }
  }
}

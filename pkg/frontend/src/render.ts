// DOM rendering for the chat view: message stream, input box, collapsible
// debug panel. The controller owns all state; this module only projects it.

import { ChatController } from './controller.js';

export function mountChat(root: HTMLElement, controller: ChatController): () => void {
  root.innerHTML = `
    <div class="chat">
      <div class="chat-toolbar">
        <label class="debug-toggle">
          <input type="checkbox" data-role="debug-toggle"> show debug panel
        </label>
      </div>
      <div class="chat-notice" data-role="notice" hidden>
        <span data-role="notice-text"></span>
        <button type="button" data-role="retry" hidden>Retry</button>
        <button type="button" data-role="restart" hidden>Start new session</button>
      </div>
      <div class="chat-turns" data-role="turns"></div>
      <form class="chat-input" data-role="form">
        <input type="text" data-role="input" placeholder="Say something..." autocomplete="off">
        <button type="submit" data-role="send">Send</button>
      </form>
    </div>
  `;

  const turnsBox = root.querySelector<HTMLElement>('[data-role=turns]')!;
  const noticeBox = root.querySelector<HTMLElement>('[data-role=notice]')!;
  const noticeText = root.querySelector<HTMLElement>('[data-role=notice-text]')!;
  const retryButton = root.querySelector<HTMLButtonElement>('[data-role=retry]')!;
  const restartButton = root.querySelector<HTMLButtonElement>('[data-role=restart]')!;
  const form = root.querySelector<HTMLFormElement>('[data-role=form]')!;
  const input = root.querySelector<HTMLInputElement>('[data-role=input]')!;
  const sendButton = root.querySelector<HTMLButtonElement>('[data-role=send]')!;
  const debugToggle = root.querySelector<HTMLInputElement>('[data-role=debug-toggle]')!;

  const render = () => {
    turnsBox.textContent = '';
    for (const turn of controller.turns) {
      const bubble = document.createElement('div');
      bubble.className = `turn turn-${turn.author}`;
      const text = document.createElement('div');
      text.className = 'turn-text';
      text.textContent = turn.text; // exactly the service's reply text
      bubble.appendChild(text);
      if (controller.debugEnabled && turn.debug) {
        const debug = document.createElement('div');
        debug.className = 'turn-debug';
        debug.textContent =
          `intent=${turn.debug.intent ?? 'none'} ` +
          `confidence=${turn.debug.confidence.toFixed(3)} ` +
          `bot=${turn.debug.bot} page=${turn.debug.page}`;
        bubble.appendChild(debug);
      }
      turnsBox.appendChild(bubble);
    }
    turnsBox.scrollTop = turnsBox.scrollHeight;

    noticeBox.hidden = controller.notice === null;
    noticeText.textContent = controller.notice ?? '';
    retryButton.hidden = !controller.canRetry;
    restartButton.hidden = !controller.canRestart;

    const busy = controller.state === 'in_flight' || controller.state === 'connecting';
    input.disabled = busy || !controller.canSend;
    sendButton.disabled = input.disabled;
  };

  const submit = (event: Event) => {
    event.preventDefault();
    const text = input.value;
    input.value = '';
    void controller.send(text);
  };

  form.addEventListener('submit', submit);
  retryButton.addEventListener('click', () => void controller.start());
  restartButton.addEventListener('click', () => void controller.restart());
  debugToggle.addEventListener('change', () => controller.setDebug(debugToggle.checked));

  render();
  return render;
}

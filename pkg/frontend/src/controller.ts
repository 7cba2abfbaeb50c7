// Conversation state for the chat view: turn list, single in-flight request,
// and the session lifecycle (start, expiry, restart). The view renders this
// state; all transitions notify the change listener.

import { ChatTransport, ReplyDebug, ServiceError } from './api.js';

export interface ChatTurn {
  author: 'user' | 'bot';
  text: string;
  debug?: ReplyDebug;
}

export type ChatState =
  | 'idle' // before start()
  | 'connecting'
  | 'ready'
  | 'in_flight'
  | 'failed' // start failed; retry possible
  | 'expired'; // session gone; restart possible

export class ChatController {
  turns: ChatTurn[] = [];
  state: ChatState = 'idle';
  sessionId: string | null = null;
  notice: string | null = null;
  debugEnabled = false;

  constructor(
    private readonly transport: ChatTransport,
    private pagePath: string,
    private readonly onChange: () => void = () => {},
  ) {}

  get canSend(): boolean {
    return this.state === 'ready';
  }

  get canRetry(): boolean {
    return this.state === 'failed';
  }

  get canRestart(): boolean {
    return this.state === 'expired';
  }

  setDebug(enabled: boolean): void {
    this.debugEnabled = enabled;
    this.onChange();
  }

  /** Open a session and show the opening orientation as the first bot turn. */
  async start(pagePath?: string): Promise<boolean> {
    if (pagePath !== undefined) this.pagePath = pagePath;
    this.turns = [];
    this.sessionId = null;
    this.notice = null;
    this.state = 'connecting';
    this.onChange();
    try {
      const opened = await this.transport.openSession(this.pagePath, this.debugEnabled);
      this.sessionId = opened.session_id;
      this.turns.push({ author: 'bot', text: opened.reply.text, debug: opened.reply.debug });
      this.state = 'ready';
    } catch (error) {
      this.state = 'failed';
      this.notice = `Could not reach the chat service (${describe(error)}). Retry?`;
      this.turns = [];
    }
    this.onChange();
    return this.state === 'ready';
  }

  /**
   * Send one message. The user turn appears immediately, the bot turn on
   * reply; a second send while one is in flight is refused client-side.
   */
  async send(text: string): Promise<boolean> {
    const trimmed = text.trim();
    if (!trimmed || !this.canSend || this.sessionId === null) return false;
    this.notice = null;
    this.state = 'in_flight';
    this.turns.push({ author: 'user', text: trimmed });
    this.onChange();
    try {
      const reply = await this.transport.sendMessage(this.sessionId, trimmed, this.debugEnabled);
      this.turns.push({ author: 'bot', text: reply.text, debug: reply.debug });
      this.state = 'ready';
      this.onChange();
      return true;
    } catch (error) {
      if (error instanceof ServiceError && error.status === 410) {
        this.state = 'expired';
        this.notice = 'This session has expired. Start a new one?';
      } else if (error instanceof ServiceError && error.status === 409) {
        // Another turn is running (e.g. a second tab); withdraw ours.
        this.turns.pop();
        this.state = 'ready';
        this.notice = 'The bot is still answering a previous message; try again.';
      } else {
        this.turns.pop();
        this.state = 'ready';
        this.notice = `The message could not be delivered (${describe(error)}).`;
      }
      this.onChange();
      return false;
    }
  }

  /** Fresh session with an empty history, after expiry or on demand. */
  async restart(): Promise<boolean> {
    return this.start();
  }
}

function describe(error: unknown): string {
  if (error instanceof ServiceError) return `HTTP ${error.status}: ${error.message}`;
  if (error instanceof Error) return error.message;
  return String(error);
}

// Typed client for the convbrowse chat service.

export interface ReplyDebug {
  intent: string | null;
  confidence: number;
  bot: string;
  page: string;
}

export interface ServiceReply {
  text: string;
  kind: string;
  debug?: ReplyDebug;
}

export interface OpenSessionResult {
  session_id: string;
  reply: ServiceReply;
}

export class ServiceError extends Error {
  constructor(public readonly status: number, message: string) {
    super(message);
    this.name = 'ServiceError';
  }
}

export interface ChatTransport {
  openSession(path: string, debug: boolean): Promise<OpenSessionResult>;
  sendMessage(sessionId: string, text: string, debug: boolean): Promise<ServiceReply>;
}

async function parseError(response: Response): Promise<ServiceError> {
  let detail = response.statusText;
  try {
    const body = await response.json();
    if (body && typeof body.error === 'string') detail = body.error;
  } catch {
    // non-JSON error body; keep the status text
  }
  return new ServiceError(response.status, detail);
}

export class ChatApi implements ChatTransport {
  constructor(private readonly baseUrl: string) {}

  private url(path: string, debug: boolean): string {
    const suffix = debug ? '?debug=1' : '';
    return `${this.baseUrl.replace(/\/$/, '')}${path}${suffix}`;
  }

  async openSession(path: string, debug: boolean): Promise<OpenSessionResult> {
    const response = await fetch(this.url('/sessions', debug), {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ path }),
    });
    if (!response.ok) throw await parseError(response);
    return response.json();
  }

  async sendMessage(sessionId: string, text: string, debug: boolean): Promise<ServiceReply> {
    const response = await fetch(this.url(`/sessions/${sessionId}/messages`, debug), {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ text }),
    });
    if (!response.ok) throw await parseError(response);
    const body = await response.json();
    return body.reply;
  }

  async getContext(sessionId: string): Promise<unknown> {
    const response = await fetch(this.url(`/sessions/${sessionId}/context`, false));
    if (!response.ok) throw await parseError(response);
    return response.json();
  }

  async healthy(): Promise<boolean> {
    try {
      const response = await fetch(this.url('/healthz', false));
      return response.ok;
    } catch {
      return false;
    }
  }
}

// In-memory fake of the service wire API, installed as global fetch.
// Preview bytes are a deterministic function of the query string, matching
// the real endpoint's params-determine-bytes contract.

export interface RecordedRequest {
  method: string;
  url: string;
  body: string | null;
}

export interface MockUser {
  username: string;
  secret: string;
  condition: 'password' | 'cueblot';
  cueParams?: string;
  failures: number;
  locked: boolean;
}

export class MockServer {
  requests: RecordedRequest[] = [];
  users = new Map<string, MockUser>();
  codes = new Map<string, string>(); // code -> username
  previewDelayMs = 0;
  private codeCounter = 0;

  previewBytes(query: string): Uint8Array {
    // Stable pseudo-PNG: a tag plus a rolling checksum of the query.
    const text = `PNG-FAKE:${query}`;
    const bytes = new TextEncoder().encode(text);
    let sum = 7;
    for (const b of bytes) sum = (sum * 31 + b) % 251;
    return new Uint8Array([...bytes, sum]);
  }

  install(): void {
    globalThis.fetch = this.fetch.bind(this) as typeof fetch;
  }

  async fetch(input: RequestInfo | URL, init?: RequestInit): Promise<Response> {
    const url = String(input);
    const method = init?.method ?? 'GET';
    const body = typeof init?.body === 'string' ? init.body : null;
    this.requests.push({ method, url, body });

    if (method === 'GET' && url.startsWith('/api/cueblot/preview?')) {
      const query = url.slice(url.indexOf('?') + 1);
      if (this.previewDelayMs > 0) {
        await new Promise((resolve, reject) => {
          const timer = setTimeout(resolve, this.previewDelayMs);
          init?.signal?.addEventListener('abort', () => {
            clearTimeout(timer);
            const err = new Error('aborted');
            err.name = 'AbortError';
            reject(err);
          });
        });
      }
      const bytes = this.previewBytes(query);
      const buf = bytes.buffer.slice(bytes.byteOffset, bytes.byteOffset + bytes.byteLength);
      return {
        ok: true,
        status: 200,
        arrayBuffer: async () => buf,
      } as unknown as Response;
    }

    const json = (status: number, payload: unknown): Response =>
      ({ ok: status < 400, status, json: async () => payload } as unknown as Response);
    const data = body ? JSON.parse(body) : {};

    if (url === '/api/register/start') {
      if (this.users.has(data.username)) {
        return json(409, { error_code: 'already_registered', message: 'taken' });
      }
      const code = `code-${++this.codeCounter}`;
      this.codes.set(code, data.username);
      return json(200, { code });
    }
    if (url === '/api/register/complete') {
      const username = this.codes.get(data.code);
      if (!username) return json(410, { error_code: 'invalid_code', message: 'bad code' });
      this.codes.delete(data.code);
      this.users.set(username, {
        username,
        secret: data.secret,
        condition: data.condition,
        cueParams: data.cue_params,
        failures: 0,
        locked: false,
      });
      return json(200, { ok: true });
    }
    if (url === '/api/login/start') {
      const user = this.users.get(data.username);
      if (!user) return json(200, { condition: 'password' });
      const out: Record<string, string> = { condition: user.condition };
      if (user.condition === 'cueblot' && user.cueParams) {
        const [, , seed, diam, blots, spacing, colors] = user.cueParams.split(':');
        out.cue_image_url = `/api/cueblot/preview?seed=${seed}&max_diam=${diam}` +
          `&num_blots=${blots}&spacing=${spacing}&num_colors=${colors}`;
      }
      return json(200, out);
    }
    if (url === '/api/login/attempt') {
      const user = this.users.get(data.username);
      if (!user) return json(200, { outcome: 'failure' });
      if (user.locked) return json(423, { error_code: 'locked_out', message: 'locked' });
      if (user.secret === data.secret) {
        user.failures = 0;
        return json(200, { outcome: 'success' });
      }
      user.failures += 1;
      if (user.failures >= 3) user.locked = true;
      return json(200, { outcome: 'failure' });
    }
    return json(404, { error_code: 'not_found', message: url });
  }
}

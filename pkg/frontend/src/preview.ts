// Latest-wins preview loading: at most one fetch in flight; a newer
// request aborts the older one, and only the newest response is applied.

export class PreviewLoader {
  private controller: AbortController | null = null;
  private generation = 0;
  inFlight = 0;

  constructor(private apply: (url: string, bytes: ArrayBuffer) => void) {}

  async load(url: string): Promise<void> {
    if (this.controller) {
      this.controller.abort();
      this.inFlight -= 1;
    }
    const controller = new AbortController();
    this.controller = controller;
    const generation = ++this.generation;
    this.inFlight += 1;
    try {
      const resp = await fetch(url, { signal: controller.signal });
      if (!resp.ok) throw new Error(`preview failed: ${resp.status}`);
      const bytes = await resp.arrayBuffer();
      if (generation === this.generation) {
        this.apply(url, bytes);
      }
    } catch (err) {
      if ((err as Error).name === 'AbortError') return;
      throw err;
    } finally {
      if (this.controller === controller) {
        this.controller = null;
        this.inFlight -= 1;
      }
    }
  }
}

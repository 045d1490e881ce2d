// Enrollment cueblot designer: tailor the five parameters until the image
// is describable, then set the description as the secret.
//
// The chosen description is write-only: it is sent in exactly one request
// body (register/complete) and never echoed, stored, or logged.

import { registerComplete } from './api.js';
import {
  BOUNDS,
  CueblotParams,
  clampField,
  defaultParams,
  previewUrl,
  randomSeed,
  toCanonicalText,
} from './params.js';
import { PreviewLoader } from './preview.js';

export interface DesignerHooks {
  onRegistered: () => void;
}

const STEPPER_FIELDS: Array<{ field: keyof typeof BOUNDS; label: string }> = [
  { field: 'maxDiameter', label: 'Max blot diameter' },
  { field: 'numBlots', label: 'Number of blots' },
  { field: 'spacing', label: 'Blot spacing' },
  { field: 'numColors', label: 'Colours' },
];

export class DesignerScreen {
  params: CueblotParams = defaultParams();
  readonly root: HTMLElement;
  private image: HTMLImageElement;
  private status: HTMLElement;
  private loader: PreviewLoader;
  lastPreviewBytes: ArrayBuffer | null = null;
  private previewUrlShown = '';
  private objectUrl: string | null = null;

  constructor(private code: string, private hooks: DesignerHooks, doc: Document = document) {
    this.root = doc.createElement('section');
    this.root.className = 'designer';
    this.root.innerHTML = `
      <h2>Design your cueblot</h2>
      <p class="hint">Tailor the image until you can describe it; take your time.</p>
      <img class="preview stale" alt="cueblot preview">
      <div class="controls"></div>
      <button type="button" class="new-seed">New seed</button>
      <form class="describe">
        <label>Description <input type="password" name="description" autocomplete="off"></label>
        <label>Confirm <input type="password" name="confirmation" autocomplete="off"></label>
        <button type="submit">Register</button>
      </form>
      <p class="status" role="status"></p>`;
    this.image = this.root.querySelector('img.preview') as HTMLImageElement;
    this.status = this.root.querySelector('.status') as HTMLElement;
    this.loader = new PreviewLoader((url, bytes) => this.showPreview(url, bytes));

    const controls = this.root.querySelector('.controls') as HTMLElement;
    for (const { field, label } of STEPPER_FIELDS) {
      const wrap = doc.createElement('label');
      wrap.textContent = label;
      const input = doc.createElement('input');
      input.type = 'number';
      input.name = field;
      input.min = String(BOUNDS[field].min);
      input.max = String(BOUNDS[field].max);
      input.value = String(this.params[field]);
      input.addEventListener('change', () => {
        this.params = { ...this.params, [field]: clampField(field, Number(input.value)) };
        input.value = String(this.params[field]);
        void this.refreshPreview();
      });
      wrap.appendChild(input);
      controls.appendChild(wrap);
    }

    (this.root.querySelector('.new-seed') as HTMLButtonElement).addEventListener('click', () => {
      this.params = { ...this.params, seed: randomSeed() };
      void this.refreshPreview();
    });

    (this.root.querySelector('form.describe') as HTMLFormElement).addEventListener('submit', (e) => {
      e.preventDefault();
      void this.submit();
    });

    void this.refreshPreview();
  }

  get currentPreviewUrl(): string {
    return this.previewUrlShown;
  }

  private async refreshPreview(): Promise<void> {
    this.image.classList.add('stale');
    await this.loader.load(previewUrl(this.params));
  }

  private showPreview(url: string, bytes: ArrayBuffer): void {
    this.lastPreviewBytes = bytes;
    this.previewUrlShown = url;
    if (this.objectUrl) URL.revokeObjectURL(this.objectUrl);
    this.objectUrl = URL.createObjectURL(new Blob([bytes], { type: 'image/png' }));
    this.image.src = this.objectUrl;
    this.image.classList.remove('stale');
  }

  private async submit(): Promise<void> {
    const form = this.root.querySelector('form.describe') as HTMLFormElement;
    const description = (form.elements.namedItem('description') as HTMLInputElement).value;
    const confirmation = (form.elements.namedItem('confirmation') as HTMLInputElement).value;
    if (!description) {
      this.status.textContent = 'Enter a description of your cueblot.';
      return;
    }
    if (description !== confirmation) {
      this.status.textContent = 'The two descriptions do not match.';
      return;
    }
    try {
      await registerComplete(this.code, description, 'cueblot', toCanonicalText(this.params));
    } catch (err) {
      this.status.textContent = (err as { message?: string }).message ?? 'Registration failed.';
      return;
    }
    form.reset();
    this.hooks.onRegistered();
  }
}

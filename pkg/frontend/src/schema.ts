/**
 * Schema-version-1 validation for capture documents.
 *
 * Mirrors the loader contract on the consuming side: every violation is
 * reported as "field.path: reason".
 */

import { SCHEMA_VERSION } from './capture';

function isNumber(value: unknown): value is number {
  return typeof value === 'number' && Number.isFinite(value);
}

function isRecord(value: unknown): value is Record<string, unknown> {
  return typeof value === 'object' && value !== null && !Array.isArray(value);
}

export function validateCapture(data: unknown): string[] {
  const issues: string[] = [];
  if (!isRecord(data)) {
    return ['document: must be a JSON object'];
  }
  if (data.schema_version === undefined) {
    issues.push('schema_version: missing required field');
  } else if (data.schema_version !== SCHEMA_VERSION) {
    issues.push(`schema_version: unsupported version ${String(data.schema_version)}`);
  }
  for (const key of ['url', 'captured_at'] as const) {
    if (typeof data[key] !== 'string') {
      issues.push(`${key}: missing required string field`);
    }
  }
  if (data.metadata !== undefined && !isRecord(data.metadata)) {
    issues.push('metadata: must be an object');
  }
  if (!Array.isArray(data.elements)) {
    issues.push('elements: missing required list field');
    return issues;
  }
  const seen = new Set<string>();
  data.elements.forEach((raw, i) => {
    const path = `elements[${i}]`;
    if (!isRecord(raw)) {
      issues.push(`${path}: must be an object`);
      return;
    }
    for (const key of ['absolute_xpath', 'tag', 'visible_text'] as const) {
      if (typeof raw[key] !== 'string') {
        issues.push(`${path}.${key}: missing required string field`);
      }
    }
    if (!isRecord(raw.attributes)) {
      issues.push(`${path}.attributes: missing required object field`);
    }
    if (typeof raw.visible !== 'boolean') {
      issues.push(`${path}.visible: missing required boolean field`);
    }
    if (raw.geometry !== undefined && raw.geometry !== null) {
      if (!isRecord(raw.geometry)) {
        issues.push(`${path}.geometry: geometry must be an object`);
      } else {
        for (const key of ['x', 'y', 'width', 'height'] as const) {
          if (!isNumber(raw.geometry[key])) {
            issues.push(`${path}.geometry.${key}: missing geometry field`);
          }
        }
        const width = raw.geometry.width;
        const height = raw.geometry.height;
        if (isNumber(width) && isNumber(height) && (width < 0 || height < 0)) {
          issues.push(`${path}.geometry: width/height must be >= 0`);
        }
      }
    }
    if (typeof raw.absolute_xpath === 'string') {
      if (seen.has(raw.absolute_xpath)) {
        issues.push(`${path}.absolute_xpath: duplicate value '${raw.absolute_xpath}'`);
      }
      seen.add(raw.absolute_xpath);
    }
  });
  return issues;
}

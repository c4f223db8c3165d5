"""Domain objects for the toy shop."""

from dataclasses import dataclass, field


@dataclass
class Item:
    sku: str
    name: str
    price_cents: int

    def label(self):
        dollars = self.price_cents // 100
        cents = self.price_cents % 100
        return f"{self.name} (${dollars}.{cents:02d})"


@dataclass
class Cart:
    owner: str
    items: list = field(default_factory=list)

    def add(self, item, quantity=1):
        for _ in range(quantity):
            self.items.append(item)

    def remove(self, sku):
        self.items = [i for i in self.items if i.sku != sku]

    def total_cents(self):
        return sum(i.price_cents for i in self.items)

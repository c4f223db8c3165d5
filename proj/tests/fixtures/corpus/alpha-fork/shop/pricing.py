from shop.models import Cart

COUPONS = {"SPRING10": 10, "WELCOME5": 5, "STAFF25": 25}


def discount_for(code):
    return COUPONS.get(code.upper(), 0)


def apply_coupon(cart: Cart, code):
    percent = discount_for(code)
    total = cart.total_cents()
    return total - (total * percent) // 100


def shipping_cents(cart: Cart):
    if cart.total_cents() >= 5000:
        return 0
    return 499 if len(cart.items) < 5 else 899
